// ---------------------------------------------------------------------------
// oscphase: oscillatory integrals with phase h(x) = k*alpha*sqrt(x) - r*x,
// stationary-phase leading terms, and the O(k) reconstruction of sqrt-family
// exponential sums from them.
//
// h'' < 0 everywhere, so each positive r has at most one stationary point
// gamma = (k*alpha/(2r))^2 with h(gamma) = (k*alpha)^2/(4r).  The leading
// term is written in the standard form
//     e(h(gamma) + sigma/8) / sqrt(|h''(gamma)|),  sigma = sign(h'') = -1.
// Poisson summation over r in (A - 1/4, B + 1/4), A = k*alpha/(2*sqrt(N)),
// B = k*alpha/2, turns S(N, k) into a sum of such terms; r at the edges and
// the r = 0 mode contribute derivative-test bounds to an error budget.
// ---------------------------------------------------------------------------
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "modcorr/dd.hpp"
#include "modcorr/weyl.hpp"

namespace modcorr {

// Adaptive panel quadrature of \int_a^b e(h_{k,r}(x)) dx with per-panel
// phase variation capped at 1/2 and certified by panel halving.  Requires
// 1 <= a < b, k >= 0, alpha > 0; throws cost_guard_error past 1e7 panels.
std::complex<double> oscillatory_integral_direct(std::int64_t k, std::int64_t r, Real2 alpha,
                                                 double a, double b, double tol);

struct OscillatoryIntegral {
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::int64_t n_range = 0;       // domain is [1, N]
    double gamma = 0.0;             // interior stationary point
    double h_at_gamma = 0.0;        // (k*alpha)^2 / (4r), unreduced
    double hpp_at_gamma = 0.0;      // negative
    std::complex<double> leading{0.0, 0.0};
    double envelope = 0.0;          // bound on |integral - leading|
};

// Leading stationary-phase term on [1, N].  Requires k >= 1, r >= 1, and
// gamma strictly interior, i.e. k*alpha/(2*sqrt(N)) < r < k*alpha/2.
OscillatoryIntegral stationary_phase_leading(std::int64_t k, std::int64_t r, Real2 alpha,
                                             std::int64_t n_range);

struct BoundCertificate {
    int order = 1;
    double min_abs_deriv = 0.0;  // min over [a, b] of |h^(order)|
    double value = 0.0;          // bound shape: order 1 -> 1/min|h'|, order 2 -> 1/sqrt(min|h''|)
};

// First/second derivative test bounds for \int_a^b e(h_{k,r}).  Order 1
// requires h' single-signed on [a, b].
BoundCertificate derivative_test_bound(int order, std::int64_t k, std::int64_t r, Real2 alpha,
                                       double a, double b);

struct PoissonRange {
    double a_edge = 0.0;          // A = k*alpha/(2*sqrt(N))
    double b_edge = 0.0;          // B = k*alpha/2
    bool zero_mode = false;       // r = 0 falls inside (A - 1/4, B + 1/4)
    std::vector<std::int64_t> r_list;  // positive r in the open interval
};

PoissonRange truncated_poisson_range(std::int64_t k, Real2 alpha, std::int64_t n_range);

// S(N, k) for the sqrt family reconstructed from O(k) stationary-phase
// terms.  Skipped modes (edges, r = 0) and Poisson truncation feed the
// record's error_budget.  Requires spec.family == Sqrt and k >= 1.
WeylSumRecord bprocess_sum(const SequenceSpec& spec, std::int64_t n_terms, std::int64_t k);

// Analytic bound shape sqrt(k)*N^(1/4) + N^(3/4)*log(N)/sqrt(k) for |S(N,k)|
// of the sqrt family; also the yardstick for direct-vs-reconstructed drift.
double bound_exponential(std::int64_t n_terms, std::int64_t k);

}  // namespace modcorr
