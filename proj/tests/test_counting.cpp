// ---------------------------------------------------------------------------
// Window counting and exact moments of the sliding-window count W(Y).
//
// The independent oracle for moments samples W at a midpoint inside every
// breakpoint segment and sums segment_length * W^m; count_window at a single
// Y is simple enough to trust by inspection.
// ---------------------------------------------------------------------------
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "modcorr/counting.hpp"

using namespace modcorr;

namespace {

PointSet hand_sorted(std::vector<double> values) {
    PointSet ps;
    ps.n_max = static_cast<std::int64_t>(values.size());
    std::sort(values.begin(), values.end());
    ps.values = std::move(values);
    ps.sorted = true;
    ps.perm.resize(ps.values.size());
    for (std::size_t i = 0; i < ps.values.size(); ++i)
        ps.perm[i] = static_cast<std::int64_t>(i + 1);
    return ps;
}

SequenceSpec sqrt_spec(const char* alpha) {
    SequenceSpec s;
    s.family = Family::Sqrt;
    s.alpha = resolve_alpha(alpha);
    s.alpha_label = alpha;
    return s;
}

// Riemann evaluation of \int_0^1 W^m over the exact breakpoint partition.
// Breakpoints of Y -> W(Y) are x_i and frac(x_i - w); W is constant between
// consecutive ones, so midpoints see every value W takes.
double moment_by_midpoints(const PointSet& ps, double window_len, int m) {
    double n = static_cast<double>(ps.n_max);
    double w = window_len / n;
    std::vector<double> cuts;
    for (double x : ps.values) {
        cuts.push_back(x);
        double pre = x - w;
        pre -= std::floor(pre);
        if (pre >= 1.0) pre = 0.0;
        cuts.push_back(pre);
    }
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0) continue;
        double mid = cuts[i] + 0.5 * len;
        auto count = count_window(ps, mid, w);
        acc += len * std::pow(static_cast<double>(count), m);
    }
    return acc;
}

}  // namespace

TEST_CASE("count_window on a hand-built set") {
    PointSet ps = hand_sorted({0.1, 0.2, 0.5, 0.9});
    CHECK(count_window(ps, 0.05, 0.2) == 2);   // [0.05, 0.25] catches 0.1, 0.2
    CHECK(count_window(ps, 0.1, 0.1) == 2);    // closed ends: 0.1 and 0.2
    CHECK(count_window(ps, 0.11, 0.08) == 0);  // (0.11, 0.19) empty
    CHECK(count_window(ps, 0.85, 0.3) == 2);   // wraps: catches 0.9 and 0.1
    CHECK(count_window(ps, 0.5, 1e-12) == 1);  // sliver window, closed left end
    CHECK(count_window(ps, 0.95, 0.999) == 4); // nearly the full circle
}

TEST_CASE("count_window rejects bad input") {
    PointSet ps = hand_sorted({0.3, 0.6});
    PointSet unsorted;
    unsorted.n_max = 2;
    unsorted.values = {0.6, 0.3};
    unsorted.sorted = false;
    CHECK_THROWS_AS(count_window(unsorted, 0.1, 0.2), precondition_error);
    CHECK_THROWS_AS(count_window(ps, 0.1, 1.0), precondition_error);
    CHECK_THROWS_AS(count_window(ps, 0.1, -0.1), precondition_error);
}

TEST_CASE("first moment equals L exactly") {
    // \int_0^1 W dY = N * w = L: each point contributes a window of measure w
    SequenceSpec s = sqrt_spec("sqrt2");
    PointSet ps = sort_points(generate_points(s, 400));
    for (double len : {0.5, 1.0, 3.7, 19.25}) {
        WindowStatistic ws = moment_exact(ps, len, 1);
        CHECK(std::fabs(ws.moment - len) <= 1e-12 * std::max(1.0, len));
        CHECK(ws.target == doctest::Approx(len).epsilon(1e-15));
    }
}

TEST_CASE("higher moments match the midpoint oracle") {
    SequenceSpec s = sqrt_spec("sqrt3");
    PointSet ps = sort_points(generate_points(s, 200));
    for (int m : {2, 3, 4}) {
        for (double len : {1.0, 2.5, 7.0}) {
            WindowStatistic ws = moment_exact(ps, len, m);
            double oracle = moment_by_midpoints(ps, len, m);
            CHECK(ws.moment == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
}

TEST_CASE("moments on a tiny hand set") {
    // two points at 0.25 and 0.75, w = 0.25 (N=2, L=0.5): W(Y) is 1 on
    // [0, 0.25] and [0.5, 0.75], else 0 apart from endpoint overlaps of
    // measure zero; so \int W = 0.5 and \int W^m = 0.5 for every m
    PointSet ps = hand_sorted({0.25, 0.75});
    for (int m : {1, 2, 3}) {
        WindowStatistic ws = moment_exact(ps, 0.5, m);
        CHECK(ws.moment == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("moment preconditions") {
    PointSet ps = hand_sorted({0.2, 0.4, 0.6});
    CHECK_THROWS_AS(moment_exact(ps, 0.5, 0), precondition_error);
    CHECK_THROWS_AS(moment_exact(ps, 0.5, 9), precondition_error);
    CHECK_THROWS_AS(moment_exact(ps, 0.0, 2), precondition_error);
    CHECK_THROWS_AS(moment_exact(ps, 3.0, 2), precondition_error);  // L >= N
    PointSet unsorted;
    unsorted.n_max = 3;
    unsorted.values = {0.6, 0.2, 0.4};
    unsorted.sorted = false;
    CHECK_THROWS_AS(moment_exact(unsorted, 0.5, 2), precondition_error);
}

TEST_CASE("moment_scan wires L = N^(1-tau)") {
    SequenceSpec s = sqrt_spec("sqrt2");
    auto rows = moment_scan(s, 2, 0.5, {100, 400});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n_points == 100);
    CHECK(rows[0].window_len == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(rows[1].window_len == doctest::Approx(20.0).epsilon(1e-12));
    for (const auto& r : rows) {
        CHECK(r.m == 2);
        CHECK(r.target == doctest::Approx(r.window_len * r.window_len).epsilon(1e-12));
        CHECK(r.ratio == doctest::Approx(r.moment / r.target).epsilon(1e-12));
        CHECK(r.moment > 0.0);
    }
}
