// SPDX-License-Identifier: Apache-2.0
#include "osl/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <limits>
#include <new>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "osl/rng.hpp"

namespace osl {

namespace {

// Sink that survives optimization; keeps the timed loop's results observable.
volatile std::uint64_t g_bench_sink = 0;

using PlainSearch = SearchOutcome (*)(const SortedView&, double);

PlainSearch plain_fn(Algorithm a) {
    switch (a) {
        case Algorithm::Binary: return &binary_search;
        case Algorithm::Interpolation: return &interpolation_search;
        case Algorithm::Adaptive: return &adaptive_search;
        case Algorithm::Hybrid: return &hybrid_search;
    }
    return &binary_search;
}

std::string cell_sort_key(const CellResult& c) {
    std::string key{dist_name(c.distribution)};
    key += '|';
    key += algorithm_name(c.algorithm);
    return key;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) out.push_back(field);
    return out;
}

double parse_num(const std::string& field) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error("bad numeric field: '" + field + "'");
    return v;
}

}  // namespace

void BenchPlan::validate() const {
    if (sizes.empty()) throw std::invalid_argument("plan needs at least one size");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw std::invalid_argument("sizes must be >= 1");
        if (i > 0 && sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("sizes must be strictly increasing");
    }
    if (distributions.empty()) throw std::invalid_argument("plan needs at least one distribution");
    if (algorithms.empty()) throw std::invalid_argument("plan needs at least one algorithm");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (num_keys < 1) throw std::invalid_argument("num_keys must be >= 1");
    if (fixture_keys) {
        if (fixture_keys->empty()) throw std::invalid_argument("fixture must hold keys");
        if (sizes.size() != 1 || sizes[0] != fixture_keys->size())
            throw std::invalid_argument("fixture plans must use sizes == {fixture size}");
    }
}

std::vector<CellResult> run_bench(const BenchPlan& plan, std::ostream* diagnostics) {
    plan.validate();
    std::vector<CellResult> results;

    for (DistKind dist : plan.distributions) {
        for (std::size_t size : plan.sizes) {
            std::optional<SortedDataset> maybe_dataset;
            try {
                if (plan.fixture_keys) {
                    DatasetSpec spec;
                    spec.size = plan.fixture_keys->size();
                    spec.distribution = DistributionSpec::defaults(dist);
                    spec.seed = plan.seed;
                    maybe_dataset.emplace(spec, *plan.fixture_keys);
                } else {
                    DatasetSpec spec;
                    spec.size = size;
                    spec.distribution = DistributionSpec::defaults(dist);
                    spec.seed = mix64(plan.seed, mix64(static_cast<std::uint64_t>(dist) + 1, size));
                    maybe_dataset.emplace(generate_dataset(spec));
                }
            } catch (const std::bad_alloc&) {
                if (diagnostics)
                    *diagnostics << "skipping cell " << dist_name(dist) << "/" << size
                                 << ": allocation failed\n";
                continue;
            }
            const SortedDataset& dataset = *maybe_dataset;

            const SortedView view = dataset.view();
            // fixture cells query every key exactly once
            const std::vector<double> queries =
                plan.fixture_keys ? *plan.fixture_keys
                                  : select_query_keys(dataset, plan.num_keys,
                                                      mix64(dataset.spec().seed, 0x71e9));
            if (diagnostics)
                *diagnostics << "cell " << dist_name(dist) << "/" << size << ": "
                             << queries.size() << " keys\n";

            for (Algorithm algo : plan.algorithms) {
                CellResult cell;
                cell.algorithm = algo;
                cell.distribution = dist;
                cell.size = size;
                cell.repetitions = plan.repetitions;
                cell.num_keys = queries.size();

                const PlainSearch search = plain_fn(algo);

                std::uint64_t acc = 0;
                for (std::size_t w = 0; w < plan.warmup_passes; ++w)
                    for (double q : queries) acc += search(view, q).value_or(0);

                const auto t0 = std::chrono::steady_clock::now();
                for (std::size_t rep = 0; rep < plan.repetitions; ++rep)
                    for (double q : queries) acc += search(view, q).value_or(0);
                const auto t1 = std::chrono::steady_clock::now();
                g_bench_sink = acc;

                cell.total_elapsed_ns = static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
                cell.mean_ns_per_search =
                    static_cast<double>(cell.total_elapsed_ns) /
                    (static_cast<double>(cell.repetitions) * static_cast<double>(cell.num_keys));

                // untimed instrumented pass
                std::size_t iter_total = 0;
                std::size_t comp_total = 0;
                cell.min_iterations = std::numeric_limits<std::size_t>::max();
                cell.max_iterations = 0;
                for (double q : queries) {
                    const SearchTrace trace = instrumented_search(algo, view, q);
                    iter_total += trace.iterations;
                    comp_total += trace.total_comparisons;
                    cell.min_iterations = std::min(cell.min_iterations, trace.iterations);
                    cell.max_iterations = std::max(cell.max_iterations, trace.iterations);
                }
                cell.mean_iterations =
                    static_cast<double>(iter_total) / static_cast<double>(queries.size());
                cell.mean_comparisons =
                    static_cast<double>(comp_total) / static_cast<double>(queries.size());

                results.push_back(cell);
            }
        }
    }
    return results;
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
    if (window % 2 == 0) throw std::invalid_argument("window must be odd");
    if (window < 1 || window > series.size())
        throw std::invalid_argument("window must satisfy 1 <= window <= series length");

    const std::size_t len = series.size();
    const std::size_t half_max = (window - 1) / 2;
    std::vector<double> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t half = std::min({i, len - 1 - i, half_max});
        double sum = 0;
        for (std::size_t j = i - half; j <= i + half; ++j) sum += series[j];
        out[i] = sum / static_cast<double>(2 * half + 1);
    }
    return out;
}

SmoothedSeries smooth_series(std::span<const double> sizes, std::span<const double> raw,
                             std::size_t window) {
    if (sizes.size() != raw.size())
        throw std::invalid_argument("sizes and raw series must have equal length");
    SmoothedSeries s;
    s.x.assign(sizes.begin(), sizes.end());
    s.y_raw.assign(raw.begin(), raw.end());
    s.y_smooth = moving_average(raw, window);
    s.window = window;
    return s;
}

void emit_csv(std::span<const CellResult> results, std::ostream& out) {
    if (results.empty()) throw std::invalid_argument("no results to emit");
    std::vector<CellResult> rows(results.begin(), results.end());
    std::sort(rows.begin(), rows.end(), [](const CellResult& a, const CellResult& b) {
        const std::string ka = cell_sort_key(a), kb = cell_sort_key(b);
        if (ka != kb) return ka < kb;
        return a.size < b.size;
    });
    out << kBenchCsvHeader << '\n';
    for (const CellResult& c : rows) {
        out << dist_name(c.distribution) << ',' << algorithm_name(c.algorithm) << ',' << c.size
            << ',' << c.repetitions << ',' << c.num_keys << ',' << format_key(c.mean_ns_per_search)
            << ',' << c.total_elapsed_ns << ',' << format_key(c.mean_iterations) << ','
            << format_key(c.mean_comparisons) << ',' << c.max_iterations << '\n';
    }
}

void emit_csv(std::span<const CellResult> results, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    emit_csv(results, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<CellResult> parse_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kBenchCsvHeader)
        throw std::runtime_error("unexpected CSV header in " + path.string());

    std::vector<CellResult> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 10)
            throw std::runtime_error("expected 10 columns, got " +
                                     std::to_string(fields.size()));
        CellResult c;
        c.distribution = parse_dist(fields[0]);
        c.algorithm = parse_algorithm(fields[1]);
        c.size = static_cast<std::size_t>(parse_num(fields[2]));
        c.repetitions = static_cast<std::size_t>(parse_num(fields[3]));
        c.num_keys = static_cast<std::size_t>(parse_num(fields[4]));
        c.mean_ns_per_search = parse_num(fields[5]);
        c.total_elapsed_ns = static_cast<std::uint64_t>(parse_num(fields[6]));
        c.mean_iterations = parse_num(fields[7]);
        c.mean_comparisons = parse_num(fields[8]);
        c.max_iterations = static_cast<std::size_t>(parse_num(fields[9]));
        rows.push_back(c);
    }
    return rows;
}

}  // namespace osl
