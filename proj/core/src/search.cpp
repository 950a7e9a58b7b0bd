// SPDX-License-Identifier: Apache-2.0
#include "osl/search.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <type_traits>

namespace osl {

namespace {

using i64 = std::int64_t;

// Interpolation probe with the fraction formed first (divide, then scale).
double probe_divide_first(const double* k, i64 lo, i64 hi, double x) {
    return static_cast<double>(lo) +
           (x - k[lo]) / (k[hi] - k[lo]) * static_cast<double>(hi - lo);
}

// Interpolation probe with the product formed first (scale, then divide).
double probe_multiply_first(const double* k, i64 lo, i64 hi, double x) {
    return static_cast<double>(lo) +
           (x - k[lo]) * static_cast<double>(hi - lo) / (k[hi] - k[lo]);
}

// Truncate toward zero and clamp into [lo, hi]. The clamp is load-bearing:
// once a narrowing step drops the endpoint bracketing of an absent key, the
// raw probe value can leave the window (and the array) entirely.
i64 to_index(double raw, i64 lo, i64 hi) {
    const double lo_d = static_cast<double>(lo);
    const double hi_d = static_cast<double>(hi);
    if (!(raw >= lo_d)) return lo;  // also catches -inf
    if (raw > hi_d) return hi;
    return static_cast<i64>(raw);
}

// Tracer policies. The algorithms are written once as templates; NullTracer
// collapses to the plain search, Recorder builds a SearchTrace.
struct NullTracer {
    void begin_step(i64, i64) {}
    void probe(i64) {}
    void secondary(i64) {}
    void count(int) {}
    void commit_step() {}
    void count_terminal(int) {}
};

struct Recorder {
    SearchTrace trace;
    TraceStep current;
    bool step_open = false;

    void begin_step(i64 lo, i64 hi) {
        current = TraceStep{};
        current.low = static_cast<std::size_t>(lo);
        current.high = static_cast<std::size_t>(hi);
        step_open = true;
    }
    void probe(i64 p) { current.probe_primary = static_cast<std::size_t>(p); }
    void secondary(i64 m) { current.probe_secondary = static_cast<std::size_t>(m); }
    void count(int n) { current.comparisons += n; }
    void commit_step() {
        trace.steps.push_back(current);
        step_open = false;
    }
    void count_terminal(int n) { trace.terminal_comparisons += static_cast<std::size_t>(n); }

    SearchTrace finish(SearchOutcome outcome, TerminalPath path) {
        assert(!step_open);
        trace.outcome = outcome;
        trace.terminal_path = path;
        trace.iterations = trace.steps.size();
        if (path == TerminalPath::PostLoopLeftCheck && !trace.steps.empty()) trace.iterations += 1;
        trace.total_comparisons = trace.terminal_comparisons;
        for (const TraceStep& s : trace.steps)
            trace.total_comparisons += static_cast<std::size_t>(s.comparisons);
        return trace;
    }
};

// Pre-loop range guard shared by all four algorithms: queries outside
// [keys[left], keys[right]] are NotFound after at most two key comparisons.
template <class Tracer>
bool guard_rejects(const double* k, i64 lo, i64 hi, double x, Tracer& t) {
    t.count_terminal(1);
    if (x < k[lo]) return true;
    t.count_terminal(1);
    if (x > k[hi]) return true;
    return false;
}

template <class Tracer>
SearchOutcome hybrid_impl(const double* k, i64 lo, i64 hi, double x, Tracer& t,
                          SearchTrace* out = nullptr) {
    auto finish = [&](SearchOutcome o, TerminalPath p) {
        if constexpr (std::is_same_v<Tracer, Recorder>) {
            if (out) *out = t.finish(o, p);
        }
        return o;
    };

    if (guard_rejects(k, lo, hi, x, t)) return finish(std::nullopt, TerminalPath::Guard);

    bool broke_flat = false;
    while (lo < hi) {
        if (k[hi] == k[lo]) {  // probe denominator would vanish
            broke_flat = true;
            break;
        }
        t.begin_step(lo, hi);
        t.count(1);  // loop condition
        const i64 inter = to_index(probe_divide_first(k, lo, hi, x), lo, hi);
        t.probe(inter);
        t.count(1);
        if (x > k[inter]) {
            // second cut halves the segment (inter, hi]
            const i64 mid = inter + (hi - inter) / 2;
            t.secondary(mid);
            t.count(1);
            if (x <= k[mid]) {
                lo = inter + 1;
                hi = mid;
            } else {
                lo = mid + 1;
            }
            t.commit_step();
        } else {
            t.count(1);
            if (x < k[inter]) {
                // second cut halves the segment [lo, inter); stepping back from
                // inter keeps the recorded fixture traces exact on odd spans
                const i64 mid = inter - (inter - lo) / 2;
                t.secondary(mid);
                t.count(1);
                if (x >= k[mid]) {
                    lo = mid;
                    hi = inter - 1;
                } else {
                    hi = mid - 1;
                }
                t.commit_step();
            } else {
                t.commit_step();
                return finish(static_cast<std::size_t>(inter), TerminalPath::InLoopEqual);
            }
        }
    }
    if (!broke_flat) t.count_terminal(1);  // final failed loop condition
    t.count_terminal(1);
    if (x == k[lo]) return finish(static_cast<std::size_t>(lo), TerminalPath::PostLoopLeftCheck);
    return finish(std::nullopt, TerminalPath::NotFound);
}

template <class Tracer>
SearchOutcome binary_impl(const double* k, i64 lo, i64 hi, double x, Tracer& t,
                          SearchTrace* out = nullptr) {
    auto finish = [&](SearchOutcome o, TerminalPath p) {
        if constexpr (std::is_same_v<Tracer, Recorder>) {
            if (out) *out = t.finish(o, p);
        }
        return o;
    };

    if (guard_rejects(k, lo, hi, x, t)) return finish(std::nullopt, TerminalPath::Guard);

    while (lo <= hi) {
        t.begin_step(lo, hi);
        t.count(1);
        const i64 mid = lo + (hi - lo) / 2;
        t.probe(mid);
        t.count(1);
        if (x > k[mid]) {
            lo = mid + 1;
        } else {
            t.count(1);
            if (x < k[mid]) {
                hi = mid - 1;
            } else {
                t.commit_step();
                return finish(static_cast<std::size_t>(mid), TerminalPath::InLoopEqual);
            }
        }
        t.commit_step();
    }
    t.count_terminal(1);
    return finish(std::nullopt, TerminalPath::NotFound);
}

template <class Tracer>
SearchOutcome interpolation_impl(const double* k, i64 lo, i64 hi, double x, Tracer& t,
                                 SearchTrace* out = nullptr) {
    auto finish = [&](SearchOutcome o, TerminalPath p) {
        if constexpr (std::is_same_v<Tracer, Recorder>) {
            if (out) *out = t.finish(o, p);
        }
        return o;
    };

    if (guard_rejects(k, lo, hi, x, t)) return finish(std::nullopt, TerminalPath::Guard);

    for (;;) {
        // while lo <= hi && k[lo] <= x && x <= k[hi], short-circuit counted
        int cond_comps = 1;
        bool live = lo <= hi;
        if (live) {
            ++cond_comps;
            live = k[lo] <= x;
        }
        if (live) {
            ++cond_comps;
            live = x <= k[hi];
        }
        if (!live) {
            t.count_terminal(cond_comps);
            return finish(std::nullopt, TerminalPath::NotFound);
        }
        if (k[lo] == k[hi]) {  // flat window: settle by direct comparison
            t.count_terminal(cond_comps);
            t.count_terminal(1);
            if (x == k[lo])
                return finish(static_cast<std::size_t>(lo), TerminalPath::PostLoopLeftCheck);
            return finish(std::nullopt, TerminalPath::NotFound);
        }
        t.begin_step(lo, hi);
        t.count(cond_comps);
        const i64 p = to_index(probe_multiply_first(k, lo, hi, x), lo, hi);
        t.probe(p);
        t.count(1);
        if (x > k[p]) {
            lo = p + 1;
        } else {
            t.count(1);
            if (x < k[p]) {
                hi = p - 1;
            } else {
                t.commit_step();
                return finish(static_cast<std::size_t>(p), TerminalPath::InLoopEqual);
            }
        }
        t.commit_step();
    }
}

template <class Tracer>
SearchOutcome adaptive_impl(const double* k, i64 bot, i64 top, double x, Tracer& t,
                            SearchTrace* out = nullptr) {
    auto finish = [&](SearchOutcome o, TerminalPath p) {
        if constexpr (std::is_same_v<Tracer, Recorder>) {
            if (out) *out = t.finish(o, p);
        }
        return o;
    };

    const i64 view_left = bot;
    const i64 view_right = top;
    if (guard_rejects(k, bot, top, x, t)) return finish(std::nullopt, TerminalPath::Guard);

    bool broke_flat = false;
    while (bot < top) {
        if (k[top] == k[bot]) {
            broke_flat = true;
            break;
        }
        t.begin_step(bot, top);
        t.count(1);  // loop condition
        const i64 med = (top + bot) / 2;
        i64 next = to_index((x - k[bot]) / (k[top] - k[bot]) * static_cast<double>(top - bot) +
                                static_cast<double>(bot),
                            bot, top);
        t.probe(next);
        t.secondary(med);
        // Two conditional binary-style cuts; med (an index) is compared with
        // offsets, exactly as in the reference code.
        t.count(1);
        if (x < k[next]) {
            t.count(1);
            if (next - bot > med) {
                top = next - 1;
                next = (bot + top) / 2;
            }
        }
        t.count(1);
        if (x > k[next]) {
            t.count(1);
            if (top - next > med) {
                bot = next + 1;
                next = (bot + top) / 2;
            }
        }
        t.count(1);
        if (x > k[next]) {
            bot = next + 1;
        } else {
            t.count(1);
            if (x < k[next]) {
                top = next - 1;
            } else {
                t.commit_step();
                return finish(static_cast<std::size_t>(next), TerminalPath::InLoopEqual);
            }
        }
        t.commit_step();
    }
    if (!broke_flat) t.count_terminal(1);
    assert(top >= view_left && top <= view_right);
    (void)view_left;
    (void)view_right;
    t.count_terminal(1);
    if (k[top] == x) return finish(static_cast<std::size_t>(top), TerminalPath::PostLoopLeftCheck);
    return finish(std::nullopt, TerminalPath::NotFound);
}

void require_finite_query(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("query key must be finite");
}

}  // namespace

SortedView::SortedView(std::span<const double> keys)
    : SortedView(keys, 0, keys.empty() ? 0 : keys.size() - 1) {}

SortedView::SortedView(std::span<const double> keys, std::size_t left, std::size_t right)
    : keys_{keys}, left_{left}, right_{right} {
    if (keys.empty()) throw std::invalid_argument("view must hold at least one key");
    if (left > right || right >= keys.size())
        throw std::invalid_argument("view bounds must satisfy 0 <= left <= right < size");
}

void SortedView::verify_keys() const {
    for (std::size_t i = left_; i <= right_; ++i) {
        if (!std::isfinite(keys_[i]))
            throw std::invalid_argument("key at index " + std::to_string(i) + " is not finite");
        if (i > left_ && keys_[i] < keys_[i - 1])
            throw std::invalid_argument("keys out of order at index " + std::to_string(i));
    }
}

SearchOutcome hybrid_search(const SortedView& view, double x) {
    require_finite_query(x);
    NullTracer t;
    return hybrid_impl(view.keys().data(), static_cast<std::int64_t>(view.left()),
                       static_cast<std::int64_t>(view.right()), x, t);
}

SearchOutcome binary_search(const SortedView& view, double x) {
    require_finite_query(x);
    NullTracer t;
    return binary_impl(view.keys().data(), static_cast<std::int64_t>(view.left()),
                       static_cast<std::int64_t>(view.right()), x, t);
}

SearchOutcome interpolation_search(const SortedView& view, double x) {
    require_finite_query(x);
    NullTracer t;
    return interpolation_impl(view.keys().data(), static_cast<std::int64_t>(view.left()),
                              static_cast<std::int64_t>(view.right()), x, t);
}

SearchOutcome adaptive_search(const SortedView& view, double x) {
    require_finite_query(x);
    NullTracer t;
    return adaptive_impl(view.keys().data(), static_cast<std::int64_t>(view.left()),
                         static_cast<std::int64_t>(view.right()), x, t);
}

SearchTrace instrumented_search(Algorithm algorithm, const SortedView& view, double x) {
    require_finite_query(x);
    Recorder t;
    t.trace.algorithm = algorithm;
    t.trace.steps.reserve(16);
    SearchTrace result;
    const double* k = view.keys().data();
    const auto lo = static_cast<std::int64_t>(view.left());
    const auto hi = static_cast<std::int64_t>(view.right());
    switch (algorithm) {
        case Algorithm::Binary: binary_impl(k, lo, hi, x, t, &result); break;
        case Algorithm::Interpolation: interpolation_impl(k, lo, hi, x, t, &result); break;
        case Algorithm::Adaptive: adaptive_impl(k, lo, hi, x, t, &result); break;
        case Algorithm::Hybrid: hybrid_impl(k, lo, hi, x, t, &result); break;
    }
    return result;
}

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Binary: return "binary";
        case Algorithm::Interpolation: return "interpolation";
        case Algorithm::Adaptive: return "adaptive";
        case Algorithm::Hybrid: return "hybrid";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "binary") return Algorithm::Binary;
    if (name == "interpolation") return Algorithm::Interpolation;
    if (name == "adaptive") return Algorithm::Adaptive;
    if (name == "hybrid") return Algorithm::Hybrid;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view terminal_path_name(TerminalPath p) {
    switch (p) {
        case TerminalPath::InLoopEqual: return "in-loop-equal";
        case TerminalPath::PostLoopLeftCheck: return "post-loop-left-check";
        case TerminalPath::Guard: return "guard";
        case TerminalPath::NotFound: return "not-found";
    }
    return "?";
}

std::string to_string(const SearchOutcome& outcome) {
    if (outcome) return "Found(" + std::to_string(*outcome) + ")";
    return "NotFound";
}

}  // namespace osl
