// SPDX-License-Identifier: Apache-2.0
//
// osl - sorted-array search toolkit command line.
//
// Exit codes: 0 success/pass, 1 verification or fuzz failure, 2 usage error,
// 3 key not found (search/trace only).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osl/bench.hpp"
#include "osl/datagen.hpp"
#include "osl/search.hpp"
#include "osl/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(static_cast<std::size_t>(std::stoull(tok)));
    }
    return out;
}

int run_gen(std::size_t size, const std::string& dist, std::optional<double> p1,
            std::optional<double> p2, std::uint64_t seed, const std::string& out_path) {
    osl::DatasetSpec spec;
    spec.size = size;
    spec.seed = seed;
    spec.distribution = osl::DistributionSpec::defaults(osl::parse_dist(dist));
    if (p1) spec.distribution.p1 = *p1;
    if (p2) spec.distribution.p2 = *p2;
    spec.validate();

    const osl::SortedDataset dataset = osl::generate_dataset(spec);
    osl::save_dataset(dataset, out_path);
    std::cout << "size=" << dataset.keys().size()
              << " first=" << osl::format_key(dataset.keys().front())
              << " last=" << osl::format_key(dataset.keys().back()) << '\n';
    return kExitOk;
}

int run_search(const std::string& in_path, double key, const std::string& algo_name,
               bool with_trace) {
    const osl::SortedDataset dataset = osl::load_dataset(in_path);
    const osl::Algorithm algo = osl::parse_algorithm(algo_name);
    const osl::SearchTrace trace = osl::instrumented_search(algo, dataset.view(), key);

    if (with_trace) {
        std::size_t i = 0;
        for (const osl::TraceStep& step : trace.steps) {
            std::cout << "iter=" << ++i << " low=" << step.low << " high=" << step.high
                      << " probe=" << step.probe_primary << " mid="
                      << (step.probe_secondary ? std::to_string(*step.probe_secondary) : "-")
                      << " comps=" << step.comparisons << '\n';
        }
    }
    std::cout << "outcome=" << osl::to_string(trace.outcome)
              << " path=" << osl::terminal_path_name(trace.terminal_path)
              << " iterations=" << trace.iterations << " comparisons=" << trace.total_comparisons
              << '\n';
    return trace.outcome ? kExitOk : kExitNotFound;
}

int run_verify() {
    const osl::Figure2Report report = osl::check_figure2();
    for (const osl::Figure2Check& check : report.checks)
        std::cerr << "figure2 check " << check.name << ": " << (check.pass ? "PASS" : "FAIL")
                  << " (" << check.detail << ")\n";
    std::cout << report.summary_line() << '\n';
    return report.pass ? kExitOk : kExitCheckFailed;
}

int run_fuzz_cmd(std::size_t cases, std::size_t max_n, std::uint64_t seed) {
    osl::FuzzConfig config{cases, max_n, seed};
    const osl::FuzzReport report = osl::run_fuzz(config);
    for (const osl::FuzzViolation& v : report.violations) std::cout << v.line() << '\n';
    std::cout << report.violations.size() << " mismatches\n";
    std::cerr << "fuzz: " << report.cases << " cases, " << report.queries << " queries\n";
    return report.pass() ? kExitOk : kExitCheckFailed;
}

int run_bench_cmd(const std::string& sizes_csv, const std::string& dists_csv,
                  const std::string& algos_csv, std::size_t reps, std::size_t keys,
                  std::uint64_t seed, std::size_t warmup, bool include_23m,
                  const std::string& csv_path) {
    osl::BenchPlan plan;
    plan.repetitions = reps;
    plan.num_keys = keys;
    plan.seed = seed;
    plan.warmup_passes = warmup;
    if (!sizes_csv.empty()) plan.sizes = parse_size_list(sizes_csv);
    if (include_23m) plan.sizes.push_back(23000000);
    if (!dists_csv.empty()) {
        plan.distributions.clear();
        std::istringstream is(dists_csv);
        std::string tok;
        while (std::getline(is, tok, ',')) plan.distributions.push_back(osl::parse_dist(tok));
    }
    if (!algos_csv.empty()) {
        plan.algorithms.clear();
        std::istringstream is(algos_csv);
        std::string tok;
        while (std::getline(is, tok, ',')) plan.algorithms.push_back(osl::parse_algorithm(tok));
    }

    const std::vector<osl::CellResult> results = osl::run_bench(plan, &std::cerr);
    osl::emit_csv(results, std::filesystem::path(csv_path));
    std::cerr << "wrote " << results.size() << " cells to " << csv_path << '\n';
    return kExitOk;
}

int run_smooth(const std::string& in_path, std::size_t window, const std::string& out_dir) {
    const std::vector<osl::CellResult> rows = osl::parse_csv(in_path);
    if (rows.empty()) throw std::runtime_error("input CSV holds no data rows");

    std::filesystem::create_directories(out_dir);

    std::map<std::pair<std::string, std::string>, std::vector<osl::CellResult>> groups;
    for (const osl::CellResult& row : rows) {
        groups[{std::string(osl::dist_name(row.distribution)),
                std::string(osl::algorithm_name(row.algorithm))}]
            .push_back(row);
    }

    const std::pair<std::string, double osl::CellResult::*> metrics[] = {
        {"mean_ns_per_search", &osl::CellResult::mean_ns_per_search},
        {"mean_iterations", &osl::CellResult::mean_iterations},
        {"mean_comparisons", &osl::CellResult::mean_comparisons},
    };

    std::size_t files = 0;
    for (auto& [group_key, cells] : groups) {
        std::sort(cells.begin(), cells.end(),
                  [](const osl::CellResult& a, const osl::CellResult& b) { return a.size < b.size; });
        std::vector<double> sizes;
        for (const osl::CellResult& c : cells) sizes.push_back(static_cast<double>(c.size));
        for (const auto& [metric_name, member] : metrics) {
            std::vector<double> raw;
            for (const osl::CellResult& c : cells) raw.push_back(c.*member);
            const osl::SmoothedSeries series = osl::smooth_series(sizes, raw, window);
            const std::filesystem::path out_path =
                std::filesystem::path(out_dir) /
                ("smooth_" + group_key.first + "_" + group_key.second + "_" + metric_name + ".csv");
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot open for writing: " + out_path.string());
            out << "size,raw,smooth\n";
            for (std::size_t i = 0; i < series.x.size(); ++i)
                out << static_cast<unsigned long long>(series.x[i]) << ','
                    << osl::format_key(series.y_raw[i]) << ','
                    << osl::format_key(series.y_smooth[i]) << '\n';
            ++files;
        }
    }
    std::cerr << "wrote " << files << " smoothed series to " << out_dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sorted-array search toolkit (hybrid, binary, interpolation, adaptive)"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a sorted dataset file");
    std::size_t gen_size = 0;
    std::string gen_dist = "uniform";
    std::optional<double> gen_p1, gen_p2;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--size", gen_size, "number of keys")->required();
    gen->add_option("--dist", gen_dist, "uniform|normal|exponential");
    gen->add_option("--p1", gen_p1, "first parameter (lower bound / mean / lambda)");
    gen->add_option("--p2", gen_p2, "second parameter (upper bound / stddev)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output path")->required();

    // search / trace
    std::string io_in, io_algo = "hybrid";
    double io_key = 0;
    auto* search = app.add_subcommand("search", "search one key in a dataset file");
    auto* trace = app.add_subcommand("trace", "search one key, printing each iteration");
    for (CLI::App* cmd : {search, trace}) {
        cmd->add_option("--in", io_in, "dataset file")->required();
        cmd->add_option("--key", io_key, "query key")->required();
        cmd->add_option("--algo", io_algo, "binary|interpolation|adaptive|hybrid");
    }

    // verify
    app.add_subcommand("verify", "check the 35-key reference fixture");

    // fuzz
    auto* fuzz = app.add_subcommand("fuzz", "differential fuzzing against the linear-scan oracle");
    std::size_t fuzz_cases = 1000, fuzz_max_n = 4096;
    std::uint64_t fuzz_seed = 1;
    fuzz->add_option("--cases", fuzz_cases, "number of generated cases");
    fuzz->add_option("--max-n", fuzz_max_n, "largest dataset size");
    fuzz->add_option("--seed", fuzz_seed, "fuzz seed");

    // bench
    auto* bench = app.add_subcommand("bench", "run the measurement protocol, write CSV");
    std::string bench_sizes, bench_dists, bench_algos, bench_csv;
    std::size_t bench_reps = 1000, bench_keys = 1000, bench_warmup = 1;
    std::uint64_t bench_seed = 42;
    bool bench_23m = false;
    bench->add_option("--sizes", bench_sizes, "comma list (default 1e3,1e4,1e5,1e6,2e6)");
    bench->add_option("--dists", bench_dists, "comma list of distributions");
    bench->add_option("--algos", bench_algos, "comma list of algorithms");
    bench->add_option("--reps", bench_reps, "timed passes over the key list");
    bench->add_option("--keys", bench_keys, "queries per cell");
    bench->add_option("--seed", bench_seed, "plan seed");
    bench->add_option("--warmup", bench_warmup, "untimed passes");
    bench->add_flag("--include-23m", bench_23m, "append the 23e6 size to the ladder");
    bench->add_option("--csv", bench_csv, "output CSV path")->required();

    // smooth
    auto* smooth = app.add_subcommand("smooth", "moving-average smoothing of a bench CSV");
    std::string smooth_in, smooth_out = ".";
    std::size_t smooth_window = 5;
    smooth->add_option("--in", smooth_in, "bench CSV")->required();
    smooth->add_option("--window", smooth_window, "odd window width (default 5)");
    smooth->add_option("--out", smooth_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_size, gen_dist, gen_p1, gen_p2, gen_seed, gen_out);
        if (search->parsed()) return run_search(io_in, io_key, io_algo, false);
        if (trace->parsed()) return run_search(io_in, io_key, io_algo, true);
        if (app.get_subcommand("verify")->parsed()) return run_verify();
        if (fuzz->parsed()) return run_fuzz_cmd(fuzz_cases, fuzz_max_n, fuzz_seed);
        if (bench->parsed())
            return run_bench_cmd(bench_sizes, bench_dists, bench_algos, bench_reps, bench_keys,
                                 bench_seed, bench_warmup, bench_23m, bench_csv);
        if (smooth->parsed()) return run_smooth(smooth_in, smooth_window, smooth_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
