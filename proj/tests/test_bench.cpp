// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "osl/bench.hpp"
#include "osl/verify.hpp"

using namespace osl;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "osl_bench_tests";
    fs::create_directories(dir);
    return dir / name;
}

const CellResult& cell_of(const std::vector<CellResult>& cells, DistKind d, Algorithm a,
                          std::size_t size) {
    const auto it = std::find_if(cells.begin(), cells.end(), [&](const CellResult& c) {
        return c.distribution == d && c.algorithm == a && c.size == size;
    });
    REQUIRE(it != cells.end());
    return *it;
}

}  // namespace

TEST_CASE("moving average: pinned examples") {
    const std::vector<double> ramp = {1, 2, 3, 4, 5};
    CHECK(moving_average(ramp, 3) == std::vector<double>{1, 2, 3, 4, 5});
    CHECK(moving_average(ramp, 1) == ramp);

    const std::vector<double> bumpy = {5, 1, 4, 1, 5};
    const std::vector<double> expected = {5, (5.0 + 1.0 + 4.0) / 3.0, (1.0 + 4.0 + 1.0) / 3.0,
                                          (4.0 + 1.0 + 5.0) / 3.0, 5};
    CHECK(moving_average(bumpy, 3) == expected);

    const std::vector<double> flat = {2.5, 2.5, 2.5, 2.5};
    CHECK(moving_average(flat, 3) == flat);
}

TEST_CASE("moving average: window validation and bounds") {
    const std::vector<double> xs = {3, 1, 2};
    CHECK_THROWS_AS(moving_average(xs, 2), std::invalid_argument);
    CHECK_THROWS_AS(moving_average(xs, 0), std::invalid_argument);
    CHECK_THROWS_AS(moving_average(xs, 5), std::invalid_argument);

    const std::vector<double> wavy = {9, 2, 7, 3, 8, 1, 6};
    const auto smoothed = moving_average(wavy, 5);
    CHECK(smoothed.size() == wavy.size());
    const auto [lo, hi] = std::minmax_element(wavy.begin(), wavy.end());
    for (double v : smoothed) {
        CHECK(v >= *lo);
        CHECK(v <= *hi);
    }
}

TEST_CASE("degenerate plans produce finite, consistent cells") {
    BenchPlan plan;
    plan.sizes = {8};
    plan.distributions = {DistKind::Uniform};
    plan.algorithms = {Algorithm::Hybrid};
    plan.repetitions = 1;
    plan.num_keys = 1;
    const auto cells = run_bench(plan);
    REQUIRE(cells.size() == 1);
    const CellResult& c = cells[0];
    CHECK(std::isfinite(c.mean_ns_per_search));
    CHECK(std::isfinite(c.mean_iterations));
    CHECK(std::isfinite(c.mean_comparisons));
    CHECK(c.mean_ns_per_search ==
          static_cast<double>(c.total_elapsed_ns) /
              (static_cast<double>(c.repetitions) * static_cast<double>(c.num_keys)));
    CHECK(c.min_iterations <= c.max_iterations);
}

TEST_CASE("fixture plans query each key once and reproduce the 2.31 mean") {
    BenchPlan plan;
    plan.fixture_keys = std::vector<double>(figure2_keys().begin(), figure2_keys().end());
    plan.sizes = {35};
    plan.distributions = {DistKind::Normal};
    plan.algorithms = {Algorithm::Hybrid};
    plan.repetitions = 2;
    const auto cells = run_bench(plan);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].num_keys == 35);
    CHECK(cells[0].mean_iterations == doctest::Approx(81.0 / 35.0).epsilon(1e-12));
    CHECK(std::round(cells[0].mean_iterations * 100.0) / 100.0 == 2.31);
    CHECK(cells[0].max_iterations == 3);
}

TEST_CASE("instrumentation statistics are identical across runs") {
    BenchPlan plan;
    plan.sizes = {500, 1000};
    plan.distributions = {DistKind::Exponential};
    plan.algorithms = {Algorithm::Hybrid, Algorithm::Adaptive};
    plan.repetitions = 2;
    plan.num_keys = 64;
    const auto a = run_bench(plan);
    const auto b = run_bench(plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean_iterations == b[i].mean_iterations);
        CHECK(a[i].mean_comparisons == b[i].mean_comparisons);
        CHECK(a[i].min_iterations == b[i].min_iterations);
        CHECK(a[i].max_iterations == b[i].max_iterations);
    }
}

TEST_CASE("iteration means keep the expected order at n=1e5") {
    BenchPlan plan;
    plan.sizes = {100000};
    plan.repetitions = 1;
    plan.num_keys = 2000;
    plan.seed = 7;
    const auto cells = run_bench(plan);

    const double hs_u = cell_of(cells, DistKind::Uniform, Algorithm::Hybrid, 100000).mean_iterations;
    const double bin_u = cell_of(cells, DistKind::Uniform, Algorithm::Binary, 100000).mean_iterations;
    CHECK(hs_u < bin_u);
    CHECK(hs_u < 0.5 * bin_u);

    for (DistKind kind : {DistKind::Normal, DistKind::Exponential}) {
        const double hs = cell_of(cells, kind, Algorithm::Hybrid, 100000).mean_iterations;
        const double interp =
            cell_of(cells, kind, Algorithm::Interpolation, 100000).mean_iterations;
        CHECK(hs < interp);
    }
}

TEST_CASE("plan validation rejects malformed input") {
    BenchPlan plan;
    plan.sizes = {};
    CHECK_THROWS_AS(run_bench(plan), std::invalid_argument);
    plan.sizes = {100, 100};
    CHECK_THROWS_AS(run_bench(plan), std::invalid_argument);
    plan.sizes = {100};
    plan.repetitions = 0;
    CHECK_THROWS_AS(run_bench(plan), std::invalid_argument);
    plan.repetitions = 1;
    plan.fixture_keys = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS(run_bench(plan), std::invalid_argument);  // sizes mismatch fixture
}

TEST_CASE("CSV schema is exact and round-trips the deterministic columns") {
    BenchPlan plan;
    plan.sizes = {64, 128};
    plan.distributions = {DistKind::Uniform};
    plan.algorithms = {Algorithm::Hybrid};
    plan.repetitions = 1;
    plan.num_keys = 16;
    const auto cells = run_bench(plan);
    REQUIRE(cells.size() == 2);

    std::ostringstream os;
    emit_csv(cells, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "distribution,algorithm,size,repetitions,num_keys,mean_ns_per_search,total_elapsed_ns,"
          "mean_iterations,mean_comparisons,max_iterations");
    std::string row;
    std::size_t rows = 0;
    while (std::getline(is, row)) {
        if (row.empty()) continue;
        CHECK(std::count(row.begin(), row.end(), ',') == 9);
        ++rows;
    }
    CHECK(rows == 2);

    const fs::path p = temp_file("cells.csv");
    emit_csv(cells, p);
    const auto parsed = parse_csv(p);
    REQUIRE(parsed.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        // rows come back sorted by (distribution, algorithm, size)
        const CellResult& out = parsed[i];
        const CellResult& in = cell_of(cells, out.distribution, out.algorithm, out.size);
        CHECK(out.repetitions == in.repetitions);
        CHECK(out.num_keys == in.num_keys);
        CHECK(out.mean_iterations == in.mean_iterations);
        CHECK(out.mean_comparisons == in.mean_comparisons);
        CHECK(out.max_iterations == in.max_iterations);
    }
    CHECK(parsed[0].size < parsed[1].size);

    CHECK_THROWS_AS(emit_csv(std::vector<CellResult>{}, os), std::invalid_argument);
}

TEST_CASE("csv rows are ordered by distribution, algorithm, size") {
    std::vector<CellResult> cells(4);
    cells[0] = {Algorithm::Hybrid, DistKind::Uniform, 200, 1, 1, 0, 0, 0, 0, 0, 0};
    cells[1] = {Algorithm::Binary, DistKind::Uniform, 100, 1, 1, 0, 0, 0, 0, 0, 0};
    cells[2] = {Algorithm::Hybrid, DistKind::Exponential, 100, 1, 1, 0, 0, 0, 0, 0, 0};
    cells[3] = {Algorithm::Hybrid, DistKind::Uniform, 100, 1, 1, 0, 0, 0, 0, 0, 0};
    std::ostringstream os;
    emit_csv(cells, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);  // header
    std::vector<std::string> firsts;
    while (std::getline(is, line))
        if (!line.empty()) firsts.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
    const std::vector<std::string> expected = {"exponential,hybrid", "uniform,binary",
                                               "uniform,hybrid", "uniform,hybrid"};
    CHECK(firsts == expected);
}

TEST_CASE("smooth_series pairs the raw and filtered views") {
    const std::vector<double> sizes = {1, 2, 3};
    const std::vector<double> raw = {10, 20, 30};
    const SmoothedSeries s = smooth_series(sizes, raw, 3);
    CHECK(s.x == sizes);
    CHECK(s.y_raw == raw);
    CHECK(s.y_smooth.size() == raw.size());
    CHECK(s.window == 3);
    CHECK_THROWS_AS(smooth_series(sizes, std::vector<double>{1.0}, 1), std::invalid_argument);
}
