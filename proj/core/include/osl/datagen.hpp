// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osl/search.hpp"

namespace osl {

enum class DistKind { Uniform, Normal, Exponential };

std::string_view dist_name(DistKind k);
DistKind parse_dist(std::string_view name);  // throws std::invalid_argument

/// uniform: p1 = lower bound, p2 = upper bound (p1 < p2)
/// normal: p1 = mean, p2 = standard deviation (p2 > 0)
/// exponential: p1 = rate lambda (p1 > 0), p2 unused
struct DistributionSpec {
    DistKind kind = DistKind::Uniform;
    double p1 = 0.0;
    double p2 = 1.0;

    static DistributionSpec uniform(double lo, double hi) { return {DistKind::Uniform, lo, hi}; }
    static DistributionSpec normal(double mean, double stddev) {
        return {DistKind::Normal, mean, stddev};
    }
    static DistributionSpec exponential(double lambda) {
        return {DistKind::Exponential, lambda, 0.0};
    }
    /// Default parameters per kind: uniform(0,1), normal(15, 2.5), exponential(1).
    static DistributionSpec defaults(DistKind kind);

    void validate() const;  // throws std::invalid_argument

    bool operator==(const DistributionSpec&) const = default;
};

struct DatasetSpec {
    std::size_t size = 1;
    DistributionSpec distribution;
    std::uint64_t seed = 0;

    void validate() const;

    bool operator==(const DatasetSpec&) const = default;
};

/// A validated non-decreasing array of finite keys plus the spec it was
/// produced from (or declared with, for loaded files).
class SortedDataset {
  public:
    SortedDataset(DatasetSpec spec, std::vector<double> keys);  // validates

    const DatasetSpec& spec() const { return spec_; }
    std::span<const double> keys() const { return keys_; }
    SortedView view() const { return SortedView{keys_}; }

    bool operator==(const SortedDataset&) const = default;

  private:
    DatasetSpec spec_;
    std::vector<double> keys_;
};

/// Draws spec.size variates with the in-repo generator (xoshiro256++ seeded
/// through SplitMix64) and sorts ascending. Transforms are fixed: uniform by
/// 53-bit mantissa scaling, normal by the Box-Muller transform, exponential
/// by inverse CDF -ln(1-u)/lambda. Same spec, same keys. Duplicates from
/// sampling are kept.
SortedDataset generate_dataset(const DatasetSpec& spec);

/// k keys sampled uniformly with replacement from the dataset (the
/// successful-search protocol). Deterministic for a given seed.
std::vector<double> select_query_keys(const SortedDataset& dataset, std::size_t k,
                                      std::uint64_t seed);

/// Text format, bit-exact round trip:
///   line 1: "osl1 <size> <kind> <p1> <p2> <seed>"
///   then one key per line, shortest decimal that round-trips the double.
void save_dataset(const SortedDataset& dataset, const std::filesystem::path& path);

/// Parses and re-validates (sortedness, finiteness, size >= 1); errors name
/// the first offending line/index. Throws std::runtime_error.
SortedDataset load_dataset(const std::filesystem::path& path);

/// Shortest decimal form of a double that parses back to the same bits.
std::string format_key(double value);

}  // namespace osl
