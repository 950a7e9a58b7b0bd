// SPDX-License-Identifier: Apache-2.0
#include "osl/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "osl/rng.hpp"

namespace osl {

namespace {

class Sampler {
  public:
    Sampler(const DistributionSpec& dist, std::uint64_t seed) : dist_{dist}, rng_{seed} {}

    double next() {
        switch (dist_.kind) {
            case DistKind::Uniform:
                return dist_.p1 + uniform01(rng_) * (dist_.p2 - dist_.p1);
            case DistKind::Normal: return next_normal();
            case DistKind::Exponential:
                return -std::log(1.0 - uniform01(rng_)) / dist_.p1;
        }
        return 0.0;
    }

  private:
    double next_normal() {
        if (spare_) {
            const double z = *spare_;
            spare_.reset();
            return dist_.p1 + dist_.p2 * z;
        }
        // Box-Muller; u1 in (0,1] keeps the log argument positive.
        const double u1 = uniform01_open_low(rng_);
        const double u2 = uniform01(rng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        return dist_.p1 + dist_.p2 * r * std::cos(a);
    }

    DistributionSpec dist_;
    Xoshiro256PlusPlus rng_;
    std::optional<double> spare_;
};

double parse_double_token(const std::string& token, const std::string& what) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::runtime_error("malformed " + what + ": '" + token + "'");
    return value;
}

}  // namespace

std::string_view dist_name(DistKind k) {
    switch (k) {
        case DistKind::Uniform: return "uniform";
        case DistKind::Normal: return "normal";
        case DistKind::Exponential: return "exponential";
    }
    return "?";
}

DistKind parse_dist(std::string_view name) {
    if (name == "uniform") return DistKind::Uniform;
    if (name == "normal") return DistKind::Normal;
    if (name == "exponential") return DistKind::Exponential;
    throw std::invalid_argument("unknown distribution: " + std::string(name));
}

DistributionSpec DistributionSpec::defaults(DistKind kind) {
    switch (kind) {
        case DistKind::Uniform: return uniform(0.0, 1.0);
        case DistKind::Normal: return normal(15.0, 2.5);
        case DistKind::Exponential: return exponential(1.0);
    }
    return {};
}

void DistributionSpec::validate() const {
    if (!std::isfinite(p1) || !std::isfinite(p2))
        throw std::invalid_argument("distribution parameters must be finite");
    switch (kind) {
        case DistKind::Uniform:
            if (!(p1 < p2)) throw std::invalid_argument("uniform requires p1 < p2");
            break;
        case DistKind::Normal:
            if (!(p2 > 0.0)) throw std::invalid_argument("normal requires stddev > 0");
            break;
        case DistKind::Exponential:
            if (!(p1 > 0.0)) throw std::invalid_argument("exponential requires lambda > 0");
            break;
    }
}

void DatasetSpec::validate() const {
    if (size < 1) throw std::invalid_argument("size must be >= 1");
    distribution.validate();
}

SortedDataset::SortedDataset(DatasetSpec spec, std::vector<double> keys)
    : spec_{spec}, keys_{std::move(keys)} {
    spec_.validate();
    if (keys_.size() != spec_.size)
        throw std::invalid_argument("dataset holds " + std::to_string(keys_.size()) +
                                    " keys, spec says " + std::to_string(spec_.size));
    SortedView{keys_}.verify_keys();
}

SortedDataset generate_dataset(const DatasetSpec& spec) {
    spec.validate();
    Sampler sampler(spec.distribution, spec.seed);
    std::vector<double> keys(spec.size);
    for (double& key : keys) key = sampler.next();
    std::sort(keys.begin(), keys.end());
    return SortedDataset{spec, std::move(keys)};
}

std::vector<double> select_query_keys(const SortedDataset& dataset, std::size_t k,
                                      std::uint64_t seed) {
    if (k == 0) throw std::invalid_argument("query count must be >= 1");
    Xoshiro256PlusPlus rng(seed);
    const auto keys = dataset.keys();
    std::vector<double> out(k);
    for (double& q : out) q = keys[uniform_below(rng, keys.size())];
    return out;
}

std::string format_key(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

void save_dataset(const SortedDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    const DatasetSpec& spec = dataset.spec();
    out << "osl1 " << spec.size << ' ' << dist_name(spec.distribution.kind) << ' '
        << format_key(spec.distribution.p1) << ' ' << format_key(spec.distribution.p2) << ' '
        << spec.seed << '\n';
    for (double key : dataset.keys()) out << format_key(key) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

SortedDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty dataset file: " + path.string());
    std::istringstream hs(header);
    std::string magic, kind_token, p1_token, p2_token;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    if (!(hs >> magic >> size >> kind_token >> p1_token >> p2_token >> seed) || magic != "osl1")
        throw std::runtime_error("malformed header in " + path.string());
    if (size < 1) throw std::runtime_error("size must be >= 1 in " + path.string());

    DatasetSpec spec;
    spec.size = size;
    spec.seed = seed;
    spec.distribution.kind = parse_dist(kind_token);
    spec.distribution.p1 = parse_double_token(p1_token, "p1");
    spec.distribution.p2 = parse_double_token(p2_token, "p2");

    std::vector<double> keys;
    keys.reserve(size);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const double value = parse_double_token(line, "key on line " +
                                                          std::to_string(keys.size() + 2));
        if (!std::isfinite(value))
            throw std::runtime_error("key at index " + std::to_string(keys.size()) +
                                     " is not finite");
        if (!keys.empty() && value < keys.back())
            throw std::runtime_error("keys out of order at index " + std::to_string(keys.size()));
        keys.push_back(value);
    }
    if (keys.size() != size)
        throw std::runtime_error("expected " + std::to_string(size) + " keys, found " +
                                 std::to_string(keys.size()));
    return SortedDataset{spec, std::move(keys)};
}

}  // namespace osl
