// ---------------------------------------------------------------------------
// seqgen: fractional-part sequences x_n = frac(alpha * a(n)) on the torus.
//
// Families:
//   Quadratic  a(n) = n^2        (phase reduced through exact integer paths)
//   Sqrt       a(n) = sqrt(n)    (double-double throughout)
//   Power      a(n) = n^beta     (exp/log in double-double, beta in (0,1))
//
// Every phase carries a certified absolute error bound; callers get an
// exception, not a silently wrong digit, when the bound crosses tolerance.
// ---------------------------------------------------------------------------
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcorr/dd.hpp"
#include "modcorr/errors.hpp"

namespace modcorr {

enum class Family { Quadratic, Sqrt, Power };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct SequenceSpec {
    Family family = Family::Sqrt;
    Real2 alpha{1.0, 0.0};
    double beta = 0.5;          // Power only
    std::string alpha_label;    // optional display name ("sqrt2", literal, ...)
};

// Throws precondition_error unless alpha > 0 and, for Power, beta in (0,1).
void validate_spec(const SequenceSpec& spec);

struct PointSet {
    std::int64_t n_max = 0;
    std::vector<double> values;       // x_n in [0, 1), index i holds n = i+1 when unsorted
    bool sorted = false;
    std::vector<std::int64_t> perm;   // sorted position -> original n (1-based); empty when unsorted
};

// Phase frac(k * alpha * a(n)) as a double in [0, 1).
// Preconditions: n >= 1, n <= 1e8, |k| <= 1e9.  Throws precision_loss_error
// when the certified error bound exceeds 1e-10.
double phase_mod1(const SequenceSpec& spec, std::int64_t n, std::int64_t k);

// Certified absolute error bound for phase_mod1 at (n, k); monotone in n.
double phase_error_bound(const SequenceSpec& spec, std::int64_t n, std::int64_t k);

// x_1..x_N in natural order.  Requires certified per-point error <= 1e-12.
PointSet generate_points(const SequenceSpec& spec, std::int64_t n_points);

// Value-sorted copy; perm[i] gives the original index n of sorted entry i.
// Ties break by original index, so the result is deterministic.
PointSet sort_points(PointSet points);

struct DioApprox {
    std::int64_t p = 0;
    std::int64_t q = 1;
    double quality = 0.0;  // q^2 * |alpha - p/q| = q * |q*alpha - p|
    bool exact = false;    // alpha indistinguishable from p/q at working precision
};

// Continued-fraction convergents p/q of alpha with q <= q_max, in order of
// increasing q.  Requires alpha > 0 and 1 <= q_max <= 1e12.
std::vector<DioApprox> diophantine_quality(Real2 alpha, std::int64_t q_max);

}  // namespace modcorr
