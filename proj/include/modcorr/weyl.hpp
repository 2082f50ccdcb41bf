// ---------------------------------------------------------------------------
// weyl: exponential sums S(N, k) = sum_{n<=N} e(k * alpha * a(n)) and the
// correlation error functional built from them.
//
// Single sums evaluate each phase independently at certified precision.
// k-scans walk k incrementally: phase(n, k+1) = phase(n, k) + x_n mod 1,
// whose drift after k steps stays below k * 2^-52 and is checked against
// the phase tolerance before the scan runs.
//
// The m-level functional with cap M:
//   E_m = N^-m * sum over nonzero integer vectors (k_1..k_{m-1}),
//         |k_i| < 2M, of |S(N, -sum k_i)| * prod |S(N, k_i)|
// and combined(m) = E_m + (M / N^tau) * E_{m-1}, with E_1 = 0 so that the
// m = 2 case reduces to the plain pair functional.
// ---------------------------------------------------------------------------
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "modcorr/seqgen.hpp"

namespace modcorr {

enum class SumMethod { Direct, BProcess };

struct WeylSumRecord {
    std::int64_t n_terms = 0;
    std::int64_t k = 0;
    std::complex<double> value{0.0, 0.0};
    SumMethod method = SumMethod::Direct;
    double seconds = 0.0;
    double error_budget = 0.0;  // Direct: certified rounding bound; BProcess: analytic budget
};

// Term-by-term sum; phases certified per point.  |k| <= 1e9, N <= 1e8.
WeylSumRecord weyl_sum_direct(const SequenceSpec& spec, std::int64_t n_terms, std::int64_t k,
                              int threads = 1);

// Full records for k = 1..k_max, incremental in k; seconds is cumulative
// scan time up to that k.  Guarded to N * k_max <= 1e11 and k_max <= 1e6.
std::vector<WeylSumRecord> weyl_scan(const SequenceSpec& spec, std::int64_t n_terms,
                                     std::int64_t k_max, int threads = 1);

// |S(N, k)| for k = 0..k_max (index k; entry 0 is N), from the same scan.
std::vector<double> weyl_magnitudes(const SequenceSpec& spec, std::int64_t n_terms,
                                    std::int64_t k_max, int threads = 1);

struct ErrorTermReport {
    int m = 2;
    std::int64_t n_terms = 0;
    std::int64_t m_cap = 0;   // M; component range is |k_i| <= 2M - 1
    double tau = 0.0;
    double level_m = 0.0;     // E_m
    double level_m1 = 0.0;    // E_{m-1}
    double combined = 0.0;    // E_m + (M / N^tau) * E_{m-1}
    double seconds = 0.0;
};

// Requires m in [2, 4], m_cap >= 1, and (2*m_cap)^(m-1) <= 1e9.
ErrorTermReport error_term_rhs(const SequenceSpec& spec, int m, std::int64_t n_terms,
                               std::int64_t m_cap, double tau, int threads = 1);

// Family-dependent critical exponent: the functional decays for tau below it.
double tau_threshold(Family family, int m);

struct ThresholdRow {
    int m = 2;
    double tau = 0.0;
    std::int64_t n_terms = 0;
    std::int64_t m_cap = 0;
    double combined = 0.0;
    bool inside = false;
    std::string error;  // nonempty marks a failed cell
};

// Grid of the combined functional with M = floor(N^tau) per cell.
std::vector<ThresholdRow> threshold_scan(const SequenceSpec& spec, int m,
                                         const std::vector<double>& taus,
                                         const std::vector<std::int64_t>& n_grid,
                                         int threads = 1);

}  // namespace modcorr
