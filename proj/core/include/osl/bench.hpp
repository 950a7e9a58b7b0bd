// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "osl/datagen.hpp"
#include "osl/search.hpp"

namespace osl {

/// One measurement campaign: for every (distribution, size) a dataset is
/// generated from a seed derived from (seed, distribution, size), num_keys
/// present keys are drawn once per cell, and every algorithm is timed over
/// repetitions passes of the whole key list after warmup_passes untimed ones.
/// Iteration/comparison statistics come from a separate untimed instrumented
/// pass so counting never sits inside the timed loop.
///
/// fixture_keys, when set, replaces dataset generation: sizes must then be
/// exactly {fixture_keys.size()} and every fixture key is queried once, so
/// iteration means over the fixture are exact rather than sampled.
struct BenchPlan {
    std::vector<std::size_t> sizes = {1000, 10000, 100000, 1000000, 2000000};
    std::vector<DistKind> distributions = {DistKind::Uniform, DistKind::Normal,
                                           DistKind::Exponential};
    std::vector<Algorithm> algorithms = {Algorithm::Binary, Algorithm::Interpolation,
                                         Algorithm::Adaptive, Algorithm::Hybrid};
    std::size_t repetitions = 1000;
    std::size_t num_keys = 1000;
    std::uint64_t seed = 42;
    std::size_t warmup_passes = 1;
    std::optional<std::vector<double>> fixture_keys;

    void validate() const;  // throws std::invalid_argument
};

struct CellResult {
    Algorithm algorithm = Algorithm::Hybrid;
    DistKind distribution = DistKind::Uniform;
    std::size_t size = 0;
    std::size_t repetitions = 0;
    std::size_t num_keys = 0;
    double mean_ns_per_search = 0;        // total_elapsed_ns / (repetitions * num_keys)
    std::uint64_t total_elapsed_ns = 0;
    double mean_iterations = 0;
    double mean_comparisons = 0;
    std::size_t min_iterations = 0;
    std::size_t max_iterations = 0;
};

/// Timing is strictly sequential and single-threaded. Cells whose dataset
/// cannot be allocated are reported to diagnostics and skipped.
std::vector<CellResult> run_bench(const BenchPlan& plan, std::ostream* diagnostics = nullptr);

/// Centered moving average with symmetrically shrinking windows at the ends:
/// index i averages over indices within min(i, len-1-i, (window-1)/2) of i.
/// window must be odd and 1 <= window <= series length; window 1 is the
/// identity. Matches the usual moving-average smoothing of plotted series.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

inline constexpr std::string_view kBenchCsvHeader =
    "distribution,algorithm,size,repetitions,num_keys,mean_ns_per_search,total_elapsed_ns,"
    "mean_iterations,mean_comparisons,max_iterations";

/// Rows sorted by (distribution, algorithm, size), names in lexicographic
/// order. Non-timing columns are deterministic for a given plan.
void emit_csv(std::span<const CellResult> results, std::ostream& out);
void emit_csv(std::span<const CellResult> results, const std::filesystem::path& path);

/// Parses a file produced by emit_csv. Throws std::runtime_error on schema
/// or value errors.
std::vector<CellResult> parse_csv(const std::filesystem::path& path);

struct SmoothedSeries {
    std::vector<double> x;        // sizes
    std::vector<double> y_raw;
    std::vector<double> y_smooth;
    std::size_t window = 1;
};

SmoothedSeries smooth_series(std::span<const double> sizes, std::span<const double> raw,
                             std::size_t window);

}  // namespace osl
