// ---------------------------------------------------------------------------
// correlate: long-range m-level correlation sums at dilation scale N^tau.
//
//   R(N) = (1/N) * sum over ordered distinct (j_1..j_m) of
//          prod_{i<m} f_i(N^tau * delta_i),
//   delta_i = torus-nearest representative of x_{j_{i+1}} - x_{j_i}.
//
// Random behaviour pins the sum to N^{(m-1)(1-tau)} * \int prod f; reports
// carry value, target, and their ratio.  The windowed path visits only
// chains inside the dilated support of each factor and is exact, not
// approximate; the brute-force path is the independent reference.
// ---------------------------------------------------------------------------
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcorr/seqgen.hpp"
#include "modcorr/testfn.hpp"

namespace modcorr {

struct CorrelationRequest {
    SequenceSpec spec;
    int m = 2;
    double tau = 0.5;
    std::int64_t n_points = 0;
    ProductTestFunction f;  // m-1 factors
};

struct CorrelationReport {
    double value = 0.0;
    double target = 0.0;  // N^{(m-1)(1-tau)} * integral of the product
    double ratio = 0.0;
    std::uint64_t tuples = 0;  // chains with nonzero contribution
    double seconds = 0.0;
};

double poisson_target(std::int64_t n_points, int m, double tau, const ProductTestFunction& f);

// Sorted-point entry points let scans reuse one generated point set.
CorrelationReport correlate_windowed_points(const PointSet& sorted_points, int m, double tau,
                                            const ProductTestFunction& f, int threads = 1);
CorrelationReport correlate_windowed(const CorrelationRequest& req, int threads = 1);

// Reference path: full nested iteration over ordered distinct chains.
// Guarded to N <= 2000 and m <= 3.
CorrelationReport correlate_bruteforce_points(const PointSet& points, int m, double tau,
                                              const ProductTestFunction& f);
CorrelationReport correlate_bruteforce(const CorrelationRequest& req);

struct CorrelationScanRow {
    std::int64_t n_points = 0;
    CorrelationReport report;
    std::string error;  // nonempty marks a failed row; the scan continues
};

std::vector<CorrelationScanRow> correlation_scan(const SequenceSpec& spec, int m, double tau,
                                                 const ProductTestFunction& f,
                                                 const std::vector<std::int64_t>& n_grid,
                                                 int threads = 1);

}  // namespace modcorr
