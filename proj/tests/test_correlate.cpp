// ---------------------------------------------------------------------------
// Correlation sums: windowed chain walk against the brute-force reference,
// the random-model target, and the scan wrapper.
// ---------------------------------------------------------------------------
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "modcorr/correlate.hpp"

using namespace modcorr;

namespace {

SequenceSpec make_spec(Family fam, const char* alpha) {
    SequenceSpec s;
    s.family = fam;
    s.alpha = resolve_alpha(alpha);
    s.alpha_label = alpha;
    return s;
}

ProductTestFunction replicate(const TestFunction1D& f, int copies) {
    ProductTestFunction p;
    for (int i = 0; i < copies; ++i) p.factors.push_back(f);
    return p;
}

CorrelationRequest make_request(Family fam, const char* alpha, int m, double tau,
                                std::int64_t n, const TestFunction1D& factor) {
    CorrelationRequest req;
    req.spec = make_spec(fam, alpha);
    req.m = m;
    req.tau = tau;
    req.n_points = n;
    req.f = replicate(factor, m - 1);
    return req;
}

void check_same(const CorrelationReport& a, const CorrelationReport& b) {
    CHECK(a.tuples == b.tuples);
    if (a.value == 0.0) {
        CHECK(b.value == 0.0);
    } else {
        CHECK(std::fabs(a.value - b.value) <= 1e-11 * std::fabs(a.value));
    }
    CHECK(a.target == doctest::Approx(b.target).epsilon(1e-14));
}

}  // namespace

TEST_CASE("poisson_target formula") {
    ProductTestFunction f = replicate(TestFunction1D::triangle(1.0), 2);
    // target = N^{(m-1)(1-tau)} * \int f; triangle integral is 1 per factor
    double t = poisson_target(1000, 3, 0.5, f);
    CHECK(t == doctest::Approx(std::pow(1000.0, 2.0 * 0.5) * 1.0).epsilon(1e-12));
    ProductTestFunction g = replicate(TestFunction1D::box(-0.5, 0.5), 1);
    CHECK(poisson_target(500, 2, 0.25, g) ==
          doctest::Approx(std::pow(500.0, 0.75)).epsilon(1e-12));
}

TEST_CASE("pair correlation: windowed equals brute force") {
    for (const char* alpha : {"sqrt2", "golden"}) {
        for (double tau : {0.3, 0.6}) {
            auto req = make_request(Family::Sqrt, alpha, 2, tau, 300,
                                    TestFunction1D::bump(1.0));
            check_same(correlate_windowed(req), correlate_bruteforce(req));
            auto reqq = make_request(Family::Quadratic, alpha, 2, tau, 300,
                                     TestFunction1D::box(-0.8, 0.4));
            check_same(correlate_windowed(reqq), correlate_bruteforce(reqq));
        }
    }
}

TEST_CASE("triple correlation: windowed equals brute force") {
    auto req = make_request(Family::Quadratic, "sqrt2", 3, 0.4, 150,
                            TestFunction1D::triangle(0.9));
    check_same(correlate_windowed(req), correlate_bruteforce(req));
    auto req2 = make_request(Family::Sqrt, "sqrt3", 3, 0.5, 150,
                             TestFunction1D::bump(0.7));
    check_same(correlate_windowed(req2), correlate_bruteforce(req2));
}

TEST_CASE("mixed factors in a product") {
    CorrelationRequest req;
    req.spec = make_spec(Family::Sqrt, "sqrt2");
    req.m = 3;
    req.tau = 0.45;
    req.n_points = 200;
    req.f.factors.push_back(TestFunction1D::box(-0.6, 0.2));
    req.f.factors.push_back(TestFunction1D::triangle(1.2));
    check_same(correlate_windowed(req), correlate_bruteforce(req));
}

TEST_CASE("support reaching exactly half the circle still matches") {
    // reach = 0.5 is the widest legal window; the arcs cover the whole torus
    auto req = make_request(Family::Sqrt, "sqrt5", 2, 0.0, 120,
                            TestFunction1D::box(-0.5, 0.5));
    check_same(correlate_windowed(req), correlate_bruteforce(req));
}

TEST_CASE("coincident points keep distinct-index semantics") {
    // alpha = 1: sqrt family hits frac(sqrt(n)) = 0 at every square n, so
    // repeated values appear; pairs of distinct indices must all count
    auto req = make_request(Family::Sqrt, "1", 2, 0.2, 100,
                            TestFunction1D::triangle(0.5));
    check_same(correlate_windowed(req), correlate_bruteforce(req));
}

TEST_CASE("randomized equivalence sweep") {
    std::mt19937_64 rng(20240817u);
    const char* alphas[] = {"sqrt2", "sqrt3", "golden", "sqrt5"};
    for (int trial = 0; trial < 12; ++trial) {
        Family fam = (rng() & 1) ? Family::Sqrt : Family::Quadratic;
        const char* alpha = alphas[rng() % 4];
        int m = 2 + static_cast<int>(rng() % 2);
        double tau = 0.15 + 0.7 * static_cast<double>(rng() % 1000) / 1000.0;
        std::int64_t n = 50 + static_cast<std::int64_t>(rng() % 200);
        TestFunction1D factor = (rng() & 1)
                                    ? TestFunction1D::bump(0.4 + (rng() % 5) * 0.2)
                                    : TestFunction1D::box(-0.7, 0.3);
        auto req = make_request(fam, alpha, m, tau, n, factor);
        check_same(correlate_windowed(req), correlate_bruteforce(req));
    }
}

TEST_CASE("thread counts do not change the windowed result") {
    auto req = make_request(Family::Quadratic, "sqrt3", 2, 0.5, 500,
                            TestFunction1D::bump(1.0));
    PointSet ps = sort_points(generate_points(req.spec, req.n_points));
    CorrelationReport one = correlate_windowed_points(ps, req.m, req.tau, req.f, 1);
    CorrelationReport four = correlate_windowed_points(ps, req.m, req.tau, req.f, 4);
    // bitwise equality: the reduction order is fixed by block index
    CHECK(one.value == four.value);
    CHECK(one.tuples == four.tuples);
}

TEST_CASE("request validation") {
    auto ok = make_request(Family::Sqrt, "sqrt2", 2, 0.5, 100, TestFunction1D::bump(1.0));
    CHECK_NOTHROW(correlate_windowed(ok));

    auto bad_m = ok;
    bad_m.m = 1;
    CHECK_THROWS_AS(correlate_windowed(bad_m), precondition_error);

    auto bad_tau = ok;
    bad_tau.tau = 1.0;
    CHECK_THROWS_AS(correlate_windowed(bad_tau), precondition_error);

    auto bad_dim = ok;
    bad_dim.f = replicate(TestFunction1D::bump(1.0), 2);  // m-1 = 1 expected
    CHECK_THROWS_AS(correlate_windowed(bad_dim), precondition_error);

    // dilated support spills past half the circle: tau = 0, radius 0.6
    auto wide = make_request(Family::Sqrt, "sqrt2", 2, 0.0, 100,
                             TestFunction1D::box(-0.6, 0.6));
    CHECK_THROWS_AS(correlate_windowed(wide), precondition_error);

    auto tiny = ok;
    tiny.n_points = 1;
    CHECK_THROWS_AS(correlate_windowed(tiny), precondition_error);
}

TEST_CASE("brute force guards its cost") {
    auto req = make_request(Family::Sqrt, "sqrt2", 2, 0.5, 2001, TestFunction1D::bump(1.0));
    CHECK_THROWS_AS(correlate_bruteforce(req), cost_guard_error);
    auto req4 = make_request(Family::Sqrt, "sqrt2", 4, 0.5, 100, TestFunction1D::bump(1.0));
    CHECK_THROWS_AS(correlate_bruteforce(req4), cost_guard_error);
}

TEST_CASE("correlation_scan survives failing rows") {
    // radius 0.6 at tau = 0.25: reach > 0.5 for N = 2 only
    SequenceSpec spec = make_spec(Family::Sqrt, "sqrt2");
    ProductTestFunction f = replicate(TestFunction1D::box(-0.6, 0.6), 1);
    auto rows = correlation_scan(spec, 2, 0.25, f, {2, 256});
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].error.empty());
    CHECK(rows[1].error.empty());
    CHECK(rows[1].report.tuples > 0);
}
