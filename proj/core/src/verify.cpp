// SPDX-License-Identifier: Apache-2.0
#include "osl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "osl/rng.hpp"

namespace osl {

namespace {

constexpr std::array<double, 35> kFigure2Keys = {
    6.983,  8.954,  11.74,  11.774, 12.192, 12.316, 12.682, 12.752, 12.939,
    12.962, 13.42,  13.435, 13.99,  13.994, 14.446, 14.616, 14.634, 14.779,
    14.961, 15.1,   15.101, 15.151, 15.602, 16.115, 16.131, 16.388, 17.053,
    17.235, 17.35,  17.418, 17.575, 18.063, 18.925, 19.207, 21.374};

const std::vector<Figure2ExpectedTrace>& expected_traces() {
    static const std::vector<Figure2ExpectedTrace> traces = {
        {0, {{0, std::nullopt}}},
        {2, {{11, 6}, {4, 2}, {2, std::nullopt}}},
        {34, {{34, std::nullopt}}},
    };
    return traces;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

SearchOutcome linear_search(const SortedView& view, double x) {
    const auto keys = view.keys();
    for (std::size_t i = view.left(); i <= view.right(); ++i)
        if (keys[i] == x) return i;
    return std::nullopt;
}

std::span<const double> figure2_keys() { return kFigure2Keys; }

std::span<const Figure2ExpectedTrace> figure2_expected_traces() { return expected_traces(); }

std::string Figure2Report::summary_line() const {
    std::ostringstream os;
    os << "figure2: " << (pass ? "PASS" : "FAIL")
       << " mean_hs_iters=" << round2(mean_hybrid_iterations);
    return os.str();
}

Figure2Report check_figure2() {
    Figure2Report report;
    const SortedView view{kFigure2Keys};
    const std::size_t n = kFigure2Keys.size();

    std::vector<SearchTrace> hybrid_traces;
    hybrid_traces.reserve(n);
    std::size_t hybrid_total = 0;
    std::size_t binary_total = 0;
    for (double key : kFigure2Keys) {
        hybrid_traces.push_back(instrumented_search(Algorithm::Hybrid, view, key));
        hybrid_total += hybrid_traces.back().iterations;
        binary_total += instrumented_search(Algorithm::Binary, view, key).iterations;
    }
    report.hybrid_iteration_total = hybrid_total;
    report.mean_hybrid_iterations = static_cast<double>(hybrid_total) / static_cast<double>(n);
    report.mean_binary_iterations = static_cast<double>(binary_total) / static_cast<double>(n);

    auto add = [&report](std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < n; ++i) {
            if (hybrid_traces[i].outcome != SearchOutcome{i}) {
                ok = false;
                detail += "index " + std::to_string(i) + " -> " +
                          to_string(hybrid_traces[i].outcome) + "; ";
            }
        }
        add("found-at-index", ok, detail.empty() ? "all 35 keys found in place" : detail);
    }
    {
        const bool ok = hybrid_total == kFigure2IterationTotal &&
                        round2(report.mean_hybrid_iterations) == kFigure2MeanIterations;
        add("mean-2.31", ok,
            "total=" + std::to_string(hybrid_total) +
                " mean=" + std::to_string(report.mean_hybrid_iterations));
    }
    {
        const bool ok =
            hybrid_traces.front().iterations == 1 && hybrid_traces.back().iterations == 1;
        add("endpoints-one-iter", ok,
            "index0=" + std::to_string(hybrid_traces.front().iterations) +
                " index34=" + std::to_string(hybrid_traces.back().iterations));
    }
    {
        const SearchTrace& t = hybrid_traces[2];
        bool ok = t.steps.size() == 3;
        const auto& expect = expected_traces()[1].probes;
        for (std::size_t s = 0; ok && s < 3; ++s)
            ok = t.steps[s].probe_primary == expect[s].first &&
                 t.steps[s].probe_secondary == expect[s].second;
        std::string got;
        for (const TraceStep& s : t.steps) {
            got += "(" + std::to_string(s.probe_primary) + "," +
                   (s.probe_secondary ? std::to_string(*s.probe_secondary) : "-") + ")";
        }
        add("row2-trace", ok, "got " + got);
    }
    {
        const auto worst = std::max_element(
            hybrid_traces.begin(), hybrid_traces.end(),
            [](const SearchTrace& a, const SearchTrace& b) { return a.iterations < b.iterations; });
        add("max-three-iters", worst->iterations <= 3,
            "max=" + std::to_string(worst->iterations));
    }
    {
        const double mean = report.mean_binary_iterations;
        add("binary-mean-window", std::abs(mean - 4.73) <= 0.3,
            "mean=" + std::to_string(mean) + " window=4.73+/-0.3");
        add("binary-mean-le-log2", mean <= 5.12, "mean=" + std::to_string(mean) + " bound=5.12");
        add("hs-under-half", report.mean_hybrid_iterations < 0.5 * mean,
            "hs=" + std::to_string(report.mean_hybrid_iterations) +
                " half-binary=" + std::to_string(0.5 * mean));
    }

    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const Figure2Check& c) { return c.pass; });
    return report;
}

std::string FuzzViolation::line() const {
    std::ostringstream os;
    os << "case=" << case_seed << " algo=" << algorithm_name(algo) << " n=" << n
       << " x=" << format_key(x) << " kind=" << kind;
    return os.str();
}

void check_search_behavior(const SortedView& view, double x, const SearchTrace& trace,
                           const SearchOutcome& plain_outcome, const SearchOutcome& oracle,
                           std::uint64_t case_seed, std::vector<FuzzViolation>& out) {
    const std::size_t n = view.length();
    auto flag = [&](std::string kind) {
        out.push_back({case_seed, trace.algorithm, n, x, std::move(kind)});
    };

    // membership soundness against the oracle
    if (trace.outcome.has_value() != oracle.has_value()) flag("membership-mismatch");
    if (trace.outcome && view.keys()[*trace.outcome] != x) flag("found-wrong-key");
    if (plain_outcome.has_value() != trace.outcome.has_value() ||
        (plain_outcome && view.keys()[*plain_outcome] != x))
        flag("plain-instrumented-divergence");

    // structural trace invariants
    std::size_t expected_iters = trace.steps.size();
    if (trace.terminal_path == TerminalPath::PostLoopLeftCheck && !trace.steps.empty())
        ++expected_iters;
    if (trace.iterations != expected_iters) flag("iteration-count-inconsistent");

    std::size_t prev_span = 0;
    bool have_prev = false;
    for (const TraceStep& step : trace.steps) {
        if (step.low < view.left() || step.high > view.right() || step.low > step.high) {
            flag("window-out-of-bounds");
            break;
        }
        if (step.probe_primary < step.low || step.probe_primary > step.high) {
            flag("probe-out-of-bounds");
            break;
        }
        if (step.probe_secondary &&
            (*step.probe_secondary < step.low || *step.probe_secondary > step.high)) {
            flag("secondary-probe-out-of-bounds");
            break;
        }
        if (step.comparisons < 1) flag("comparisons-missing");
        if (trace.algorithm == Algorithm::Hybrid &&
            (step.comparisons < 3 || step.comparisons > 4))
            flag("hybrid-comparisons-out-of-range");
        if (trace.algorithm == Algorithm::Adaptive &&
            (step.comparisons < 4 || step.comparisons > 7))
            flag("adaptive-comparisons-out-of-range");
        const std::size_t span = step.high - step.low;
        if (have_prev) {
            if (span >= prev_span) flag("range-not-shrinking");
            if (trace.algorithm == Algorithm::Hybrid) {
                const std::size_t prev_len = prev_span + 1;
                if (span + 1 > prev_len / 2 + 1) flag("halving-violated");
            }
        }
        prev_span = span;
        have_prev = true;
    }

    if (trace.algorithm == Algorithm::Hybrid) {
        const double bound = std::log2(static_cast<double>(n)) + 2.0;
        if (static_cast<double>(trace.iterations) > bound + 1e-9) flag("iteration-bound-exceeded");
    }
}

FuzzReport run_fuzz(const FuzzConfig& config) {
    if (config.cases < 1) throw std::invalid_argument("cases must be >= 1");
    if (config.max_n < 1) throw std::invalid_argument("max_n must be >= 1");

    FuzzReport report;
    constexpr Algorithm kAlgorithms[] = {Algorithm::Binary, Algorithm::Interpolation,
                                         Algorithm::Adaptive, Algorithm::Hybrid};
    constexpr DistKind kKinds[] = {DistKind::Uniform, DistKind::Normal, DistKind::Exponential};

    for (std::size_t i = 0; i < config.cases; ++i) {
        const std::uint64_t case_seed = mix64(config.seed, i);
        Xoshiro256PlusPlus rng(case_seed);

        DatasetSpec spec;
        // sweep the small sizes first; they hold most of the edge cases
        spec.size = i < 64 ? std::min<std::size_t>(i + 1, config.max_n)
                           : 1 + uniform_below(rng, config.max_n);
        spec.distribution = DistributionSpec::defaults(kKinds[i % 3]);
        spec.seed = case_seed;
        const SortedDataset dataset = generate_dataset(spec);
        const SortedView view = dataset.view();
        const auto keys = dataset.keys();
        const std::size_t n = keys.size();

        std::vector<double> queries;
        if (n <= 256) {
            queries.assign(keys.begin(), keys.end());
        } else {
            for (int q = 0; q < 256; ++q) queries.push_back(keys[uniform_below(rng, n)]);
        }
        // absent candidates: midpoints of adjacent distinct keys, plus a value
        // beyond each extreme (membership is still decided by the oracle)
        if (n <= 256) {
            for (std::size_t j = 0; j + 1 < n; ++j)
                if (keys[j] < keys[j + 1])
                    queries.push_back(keys[j] + (keys[j + 1] - keys[j]) / 2.0);
        } else {
            for (int q = 0; q < 256; ++q) {
                const std::size_t j = uniform_below(rng, n - 1);
                if (keys[j] < keys[j + 1])
                    queries.push_back(keys[j] + (keys[j + 1] - keys[j]) / 2.0);
            }
        }
        queries.push_back(keys.front() - 1.0);
        queries.push_back(keys.back() + 1.0);

        for (double x : queries) {
            ++report.queries;
            const SearchOutcome oracle = linear_search(view, x);
            for (Algorithm algo : kAlgorithms) {
                const SearchTrace trace = instrumented_search(algo, view, x);
                SearchOutcome plain;
                switch (algo) {
                    case Algorithm::Binary: plain = binary_search(view, x); break;
                    case Algorithm::Interpolation: plain = interpolation_search(view, x); break;
                    case Algorithm::Adaptive: plain = adaptive_search(view, x); break;
                    case Algorithm::Hybrid: plain = hybrid_search(view, x); break;
                }
                check_search_behavior(view, x, trace, plain, oracle, case_seed,
                                      report.violations);
            }
        }
        ++report.cases;
    }
    return report;
}

}  // namespace osl
