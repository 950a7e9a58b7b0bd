// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>

#include "osl/datagen.hpp"
#include "osl/verify.hpp"

using namespace osl;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "osl_datagen_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

double sample_mean(std::span<const double> xs) {
    double sum = 0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    const double m = sample_mean(xs);
    double sum = 0;
    for (double x : xs) sum += (x - m) * (x - m);
    return sum / static_cast<double>(xs.size() - 1);
}

// Kolmogorov-Smirnov statistic of a sorted sample against uniform(0,1).
double ks_uniform01(std::span<const double> sorted) {
    const double n = static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - sorted[i]));
        d = std::max(d, std::abs(static_cast<double>(i) / n - sorted[i]));
    }
    return d;
}

}  // namespace

TEST_CASE("generation is deterministic and pinned to golden values") {
    const DatasetSpec spec{5, DistributionSpec::uniform(0, 1), 42};
    const SortedDataset a = generate_dataset(spec);
    const SortedDataset b = generate_dataset(spec);
    CHECK(a == b);

    const std::vector<double> golden = {0.3188210400616611, 0.7011355981347556,
                                        0.793504489691729, 0.8143051451229099,
                                        0.9838941681774888};
    REQUIRE(a.keys().size() == golden.size());
    for (std::size_t i = 0; i < golden.size(); ++i) CHECK(a.keys()[i] == golden[i]);
}

TEST_CASE("normal and exponential streams are pinned") {
    const SortedDataset n = generate_dataset({4, DistributionSpec::normal(15, 2.5), 3});
    const std::vector<double> n_golden = {10.120287209649955, 11.356187634196152,
                                          13.894537631036227, 15.74946910126334};
    REQUIRE(n.keys().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(n.keys()[i] == n_golden[i]);

    const SortedDataset e = generate_dataset({3, DistributionSpec::exponential(1), 11});
    const std::vector<double> e_golden = {1.6423080148916196, 1.9645635013750393,
                                          3.3299160554482974};
    REQUIRE(e.keys().size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(e.keys()[i] == e_golden[i]);
}

TEST_CASE("generated datasets are sorted and finite for every kind") {
    for (DistKind kind : {DistKind::Uniform, DistKind::Normal, DistKind::Exponential}) {
        const SortedDataset d =
            generate_dataset({10000, DistributionSpec::defaults(kind), 1234});
        const auto keys = d.keys();
        CHECK(std::is_sorted(keys.begin(), keys.end()));
        CHECK(std::all_of(keys.begin(), keys.end(), [](double k) { return std::isfinite(k); }));
    }
}

TEST_CASE("a single uniform(0,1) draw lands in [0,1)") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const SortedDataset d = generate_dataset({1, DistributionSpec::uniform(0, 1), seed});
        CHECK(d.keys()[0] >= 0.0);
        CHECK(d.keys()[0] < 1.0);
    }
}

TEST_CASE("distribution statistics at n=1e5 match theory") {
    const std::size_t n = 100000;

    SUBCASE("uniform(0,1) seed 42: mean and KS distance") {
        const SortedDataset d = generate_dataset({n, DistributionSpec::uniform(0, 1), 42});
        CHECK(std::abs(sample_mean(d.keys()) - 0.5) < 0.01);
        CHECK(ks_uniform01(d.keys()) < 0.01);
    }
    SUBCASE("exponential(1) seed 7: mean") {
        const SortedDataset d = generate_dataset({n, DistributionSpec::exponential(1), 7});
        CHECK(std::abs(sample_mean(d.keys()) - 1.0) < 0.02);
    }
    SUBCASE("sample variance within 3 standard errors for each kind") {
        struct Case {
            DistributionSpec dist;
            std::uint64_t seed;
            double var;   // theoretical variance
            double mu4;   // theoretical fourth central moment
        };
        const Case cases[] = {
            {DistributionSpec::uniform(0, 1), 42, 1.0 / 12.0, 1.0 / 80.0},
            {DistributionSpec::normal(15, 2.5), 9, 6.25, 3 * 6.25 * 6.25},
            {DistributionSpec::exponential(1), 7, 1.0, 9.0},
        };
        for (const Case& c : cases) {
            const SortedDataset d = generate_dataset({n, c.dist, c.seed});
            const double s2 = sample_variance(d.keys());
            const double nd = static_cast<double>(n);
            const double se =
                std::sqrt((c.mu4 - c.var * c.var * (nd - 3) / (nd - 1)) / nd);
            CHECK(std::abs(s2 - c.var) < 3 * se);
        }
    }
}

TEST_CASE("query key selection samples present keys deterministically") {
    const SortedDataset d = generate_dataset({512, DistributionSpec::normal(15, 2.5), 5});
    const auto keys = d.keys();

    const std::vector<double> q1 = select_query_keys(d, 1000, 77);
    const std::vector<double> q2 = select_query_keys(d, 1000, 77);
    CHECK(q1 == q2);
    CHECK(q1.size() == 1000);
    for (double q : q1)
        CHECK(std::binary_search(keys.begin(), keys.end(), q));

    const SortedDataset single = generate_dataset({1, DistributionSpec::uniform(0, 1), 8});
    CHECK(select_query_keys(single, 1, 0) == std::vector<double>{single.keys()[0]});

    CHECK_THROWS_AS(select_query_keys(d, 0, 1), std::invalid_argument);
}

TEST_CASE("save/load round trip is bit exact") {
    for (DistKind kind : {DistKind::Uniform, DistKind::Normal, DistKind::Exponential}) {
        const SortedDataset d = generate_dataset({100, DistributionSpec::defaults(kind), 21});
        const fs::path p = temp_file("roundtrip.osl");
        save_dataset(d, p);
        const SortedDataset back = load_dataset(p);
        CHECK(back.spec() == d.spec());
        REQUIRE(back.keys().size() == d.keys().size());
        CHECK(std::memcmp(back.keys().data(), d.keys().data(),
                          d.keys().size() * sizeof(double)) == 0);
    }
}

TEST_CASE("the 35-key fixture round-trips exactly") {
    const auto keys = figure2_keys();
    const SortedDataset d{{keys.size(), DistributionSpec::normal(15, 2.5), 0},
                          std::vector<double>(keys.begin(), keys.end())};
    const fs::path p = temp_file("fig2.osl");
    save_dataset(d, p);
    CHECK(load_dataset(p) == d);
}

TEST_CASE("duplicate keys survive storage") {
    const std::vector<double> dup = {1.0, 2.0, 2.0, 2.0, 3.0};
    const SortedDataset d{{5, DistributionSpec::uniform(0, 4), 0}, dup};
    const fs::path p = temp_file("dup.osl");
    save_dataset(d, p);
    CHECK(load_dataset(p).keys()[2] == 2.0);
}

TEST_CASE("loader rejects malformed files with a useful message") {
    const fs::path p = temp_file("bad.osl");

    write_text(p, "osl1 3 uniform 0 1 7\n1\n3\n2\n");
    CHECK_THROWS_WITH_AS(load_dataset(p), doctest::Contains("index 2"), std::runtime_error);

    write_text(p, "");
    CHECK_THROWS_AS(load_dataset(p), std::runtime_error);

    write_text(p, "nonsense header\n");
    CHECK_THROWS_AS(load_dataset(p), std::runtime_error);

    write_text(p, "osl1 0 uniform 0 1 7\n");
    CHECK_THROWS_WITH_AS(load_dataset(p), doctest::Contains("size must be >= 1"),
                         std::runtime_error);

    write_text(p, "osl1 2 uniform 0 1 7\n1\ninf\n");
    CHECK_THROWS_AS(load_dataset(p), std::runtime_error);

    write_text(p, "osl1 4 uniform 0 1 7\n1\n2\n");
    CHECK_THROWS_WITH_AS(load_dataset(p), doctest::Contains("expected 4 keys"),
                         std::runtime_error);
}

TEST_CASE("specs validate their parameters") {
    CHECK_THROWS_AS(generate_dataset({0, DistributionSpec::uniform(0, 1), 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset({5, DistributionSpec::uniform(2, 2), 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset({5, DistributionSpec::normal(0, 0), 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset({5, DistributionSpec::exponential(0), 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_dist("cauchy"), std::invalid_argument);
}

TEST_CASE("format_key emits shortest round-trip decimals") {
    for (double v : {0.1, 1.0 / 3.0, 123456.789, -0.0, 1e-308, 2.5}) {
        const std::string s = format_key(v);
        double back = 0;
        CHECK(std::from_chars(s.data(), s.data() + s.size(), back).ec == std::errc{});
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    }
}
