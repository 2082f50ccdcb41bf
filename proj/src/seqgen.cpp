#include "modcorr/seqgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modcorr {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Relative error carried by a constant parsed from a 50-digit literal,
// i.e. how far stored alpha may sit from the intended real number.
constexpr double kAlphaRelErr = 4e-30;

// Final combination of partial fractions plus double rounding.
constexpr double kCombineErr = 4e-16;

constexpr double kPhaseTol = 1e-10;
constexpr double kPointTol = 1e-12;

constexpr std::int64_t kMaxN = 100000000;       // 1e8
constexpr std::int64_t kMaxK = 1000000000;      // 1e9

// frac(M * a) for a >= 0, computed exactly in integer arithmetic and rounded
// once at the end.  Write a = mant * 2^(-shift) with mant < 2^53; then
// M * a = (M * mant) * 2^(-shift) and the fractional part is the low `shift`
// bits of the 192-bit product.
double frac_u128_times_double(u128 m, double a) {
    if (a == 0.0 || m == 0) return 0.0;
    int exp2;
    double f = std::frexp(a, &exp2);               // a = f * 2^exp2, f in [0.5, 1)
    u64 mant = static_cast<u64>(std::ldexp(f, 53));  // exact 53-bit integer
    int shift = 53 - exp2;
    if (shift <= 0) return 0.0;                    // a * M is an integer

    u64 m_lo = static_cast<u64>(m);
    u64 m_hi = static_cast<u64>(m >> 64);
    u128 p0 = static_cast<u128>(m_lo) * mant;
    u128 p1 = static_cast<u128>(m_hi) * mant + (p0 >> 64);
    u64 limb0 = static_cast<u64>(p0);
    u64 limb1 = static_cast<u64>(p1);
    u64 limb2 = static_cast<u64>(p1 >> 64);

    // Keep only the low `shift` bits of limb2:limb1:limb0.
    auto mask_low = [](u64 v, int bits) -> u64 {
        if (bits <= 0) return 0;
        if (bits >= 64) return v;
        return v & ((u64{1} << bits) - 1);
    };
    limb0 = mask_low(limb0, shift);
    limb1 = mask_low(limb1, shift - 64);
    limb2 = mask_low(limb2, shift - 128);

    double frac = std::ldexp(static_cast<double>(limb2), 128 - shift) +
                  std::ldexp(static_cast<double>(limb1), 64 - shift) +
                  std::ldexp(static_cast<double>(limb0), -shift);
    if (frac >= 1.0) frac -= 1.0;  // conversion rounding may land exactly on 1
    if (frac < 0.0) frac = 0.0;
    return frac;
}

double wrap_unit(double t) {
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    if (t < 0.0) t = 0.0;
    return t;
}

// Quadratic phase frac(k * alpha * n^2): both alpha limbs are reduced against
// the exact integer |k| * n^2, so no precision is lost to the size of the
// phase itself.
double phase_quadratic(const SequenceSpec& spec, std::int64_t n, std::int64_t k) {
    u64 nn = static_cast<u64>(n);
    u128 m = static_cast<u128>(nn) * nn;
    m *= static_cast<u64>(k < 0 ? -k : k);
    double f_hi = frac_u128_times_double(m, spec.alpha.hi);
    double f_lo = frac_u128_times_double(m, std::fabs(spec.alpha.lo));
    double t = spec.alpha.lo < 0.0 ? f_hi - f_lo : f_hi + f_lo;
    t = wrap_unit(t);
    if (k < 0) t = t == 0.0 ? 0.0 : 1.0 - t;
    return wrap_unit(t);
}

Real2 phase_value_dd(const SequenceSpec& spec, std::int64_t n, std::int64_t k) {
    Real2 c = spec.alpha * static_cast<double>(k);
    switch (spec.family) {
        case Family::Sqrt:
            return c * sqrt2_from_double(static_cast<double>(n));
        case Family::Power: {
            Real2 l = log2r(static_cast<double>(n));
            return c * exp2r(l * spec.beta);
        }
        case Family::Quadratic: {
            double nd = static_cast<double>(n);
            return c * (Real2(nd) * nd);
        }
    }
    return {0.0, 0.0};
}

void check_phase_args(const SequenceSpec& spec, std::int64_t n, std::int64_t k) {
    validate_spec(spec);
    if (n < 1 || n > kMaxN)
        throw precondition_error("phase_mod1: n must lie in [1, 1e8], got " + std::to_string(n));
    if (k < -kMaxK || k > kMaxK)
        throw precondition_error("phase_mod1: |k| must not exceed 1e9, got " + std::to_string(k));
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Quadratic: return "quadratic";
        case Family::Sqrt: return "sqrt";
        case Family::Power: return "power";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "quadratic") return Family::Quadratic;
    if (name == "sqrt") return Family::Sqrt;
    if (name == "power") return Family::Power;
    throw precondition_error("unknown sequence family: " + name);
}

void validate_spec(const SequenceSpec& spec) {
    if (!(spec.alpha.hi > 0.0) || !std::isfinite(spec.alpha.hi) || !std::isfinite(spec.alpha.lo))
        throw precondition_error("sequence spec: alpha must be positive and finite");
    if (spec.family == Family::Power && !(spec.beta > 0.0 && spec.beta < 1.0))
        throw precondition_error("sequence spec: beta must lie in (0, 1)");
}

double phase_error_bound(const SequenceSpec& spec, std::int64_t n, std::int64_t k) {
    check_phase_args(spec, n, k);
    double nd = static_cast<double>(n);
    double kd = std::fabs(static_cast<double>(k));
    double phase_mag;
    double chain_rel;
    switch (spec.family) {
        case Family::Quadratic:
            // Integer reduction is exact; only the alpha literal itself and
            // the final combination contribute.
            phase_mag = kd * nd * nd * spec.alpha.hi;
            chain_rel = kAlphaRelErr;
            break;
        case Family::Sqrt:
            phase_mag = kd * std::sqrt(nd) * spec.alpha.hi;
            chain_rel = kAlphaRelErr + 4e-31;
            break;
        case Family::Power:
            phase_mag = kd * std::pow(nd, spec.beta) * spec.alpha.hi;
            chain_rel = kAlphaRelErr + 6e-30;  // exp/log chain
            break;
        default:
            phase_mag = 0.0;
            chain_rel = 0.0;
    }
    return phase_mag * chain_rel + kCombineErr;
}

double phase_mod1(const SequenceSpec& spec, std::int64_t n, std::int64_t k) {
    check_phase_args(spec, n, k);
    if (k == 0) return 0.0;
    double bound = phase_error_bound(spec, n, k);
    if (bound > kPhaseTol)
        throw precision_loss_error("phase_mod1: certified error " + std::to_string(bound) +
                                   " exceeds 1e-10 at n=" + std::to_string(n) +
                                   " k=" + std::to_string(k));
    if (spec.family == Family::Quadratic) return phase_quadratic(spec, n, k);
    return frac2_to_unit_double(phase_value_dd(spec, n, k));
}

PointSet generate_points(const SequenceSpec& spec, std::int64_t n_points) {
    validate_spec(spec);
    if (n_points < 1 || n_points > kMaxN)
        throw precondition_error("generate_points: N must lie in [1, 1e8], got " +
                                 std::to_string(n_points));
    double bound = phase_error_bound(spec, n_points, 1);
    if (bound > kPointTol)
        throw precision_loss_error("generate_points: certified per-point error " +
                                   std::to_string(bound) + " exceeds 1e-12 at N=" +
                                   std::to_string(n_points));
    PointSet ps;
    ps.n_max = n_points;
    ps.values.resize(static_cast<std::size_t>(n_points));
    if (spec.family == Family::Quadratic) {
        for (std::int64_t n = 1; n <= n_points; ++n)
            ps.values[static_cast<std::size_t>(n - 1)] = phase_quadratic(spec, n, 1);
    } else {
        for (std::int64_t n = 1; n <= n_points; ++n)
            ps.values[static_cast<std::size_t>(n - 1)] =
                frac2_to_unit_double(phase_value_dd(spec, n, 1));
    }
    return ps;
}

PointSet sort_points(PointSet points) {
    if (points.sorted) return points;
    std::size_t n = points.values.size();
    std::vector<std::int64_t> order(n);
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        double va = points.values[static_cast<std::size_t>(a)];
        double vb = points.values[static_cast<std::size_t>(b)];
        if (va != vb) return va < vb;
        return a < b;
    });
    PointSet out;
    out.n_max = points.n_max;
    out.sorted = true;
    out.values.resize(n);
    out.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = points.values[static_cast<std::size_t>(order[i])];
        out.perm[i] = order[i] + 1;  // original index n is 1-based
    }
    return out;
}

std::vector<DioApprox> diophantine_quality(Real2 alpha, std::int64_t q_max) {
    if (!(alpha.hi > 0.0))
        throw precondition_error("diophantine_quality: alpha must be positive");
    if (q_max < 1 || q_max > 1000000000000LL)
        throw precondition_error("diophantine_quality: q_max must lie in [1, 1e12]");

    std::vector<DioApprox> out;
    // Convergent recurrence h_i = a_i h_{i-1} + h_{i-2}, seeded with the
    // usual virtual terms h_{-2}/k_{-2} = 0/1, h_{-1}/k_{-1} = 1/0.
    __int128 p_prev2 = 0, q_prev2 = 1;
    __int128 p_prev1 = 1, q_prev1 = 0;
    Real2 x = alpha;
    for (int step = 0; step < 128; ++step) {
        Real2 fl = floor2(x);
        double digit_d = fl.to_double();
        if (!(std::fabs(digit_d) < 9.2e18)) break;  // digit no longer fits an int64
        auto digit = static_cast<std::int64_t>(digit_d);
        Real2 rem = x - fl;

        __int128 p_next = static_cast<__int128>(digit) * p_prev1 + p_prev2;
        __int128 q_next = static_cast<__int128>(digit) * q_prev1 + q_prev2;
        if (q_next > q_max || p_next > 9200000000000000000LL) break;

        DioApprox rec;
        rec.p = static_cast<std::int64_t>(p_next);
        rec.q = static_cast<std::int64_t>(q_next);
        // quality = q * |q*alpha - p|, evaluated directly from alpha so the
        // continued-fraction chain only selects the pair, never degrades it.
        Real2 resid = alpha * static_cast<double>(rec.q) - static_cast<double>(rec.p);
        rec.quality = (abs(resid) * static_cast<double>(rec.q)).to_double();
        // Remainder at working precision zero means alpha is (numerically)
        // this rational; the convergent is exact and the expansion stops.
        if (rem.hi < 1e-27) {
            rec.exact = true;
            rec.quality = 0.0;
        }
        out.push_back(rec);
        if (rec.exact) break;

        p_prev2 = p_prev1;
        q_prev2 = q_prev1;
        p_prev1 = p_next;
        q_prev1 = q_next;
        x = 1.0 / rem;
    }
    return out;
}

}  // namespace modcorr
