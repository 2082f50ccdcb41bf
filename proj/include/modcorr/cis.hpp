// ---------------------------------------------------------------------------
// cis: e(t) = exp(2*pi*i*t) for t in [0, 1), plus compensated accumulators.
//
// The argument is reduced to the nearest quarter turn, leaving |dt| <= 1/8;
// sin(2*pi*dt) and cos(2*pi*dt) come from degree-17/16 Taylor polynomials
// whose truncation error is below 2^-56, so the total error per evaluation
// stays within a few ulp.  Exponential-sum loops call this tens of billions
// of times, which is why libm sincos is not used.
// ---------------------------------------------------------------------------
#pragma once

#include <cmath>
#include <complex>

namespace modcorr {

namespace detail {
// Taylor coefficients of sin(2*pi*x) (odd powers) and cos(2*pi*x) (even
// powers), valid for |x| <= 1/8.
inline constexpr double kSinCoef[9] = {
    6.28318530717958623e+00,  -4.13417022403997620e+01, 8.16052492760750567e+01,
    -7.67058597530613895e+01, 4.20586939448976551e+01,  -1.50946425768229897e+01,
    3.81995258484828204e+00,  -7.18122301778500560e-01, 1.04229162208139839e-01,
};
inline constexpr double kCosCoef[9] = {
    1.00000000000000000e+00,  -1.97392088021787160e+01, 6.49393940226682957e+01,
    -8.54568172066937279e+01, 6.02446413718766607e+01,  -2.64262567833743987e+01,
    7.90353637131846920e+00,  -1.71439071108867203e+00, 2.82005968455791234e-01,
};
}  // namespace detail

// cos/sin of 2*pi*t for t in [0, 1).  t exactly 0 yields (1, 0) exactly.
inline void cis_unit(double t, double& c_out, double& s_out) {
    double m = std::nearbyint(4.0 * t);  // quarter-turn index, 0..4
    double dt = t - 0.25 * m;
    double w = dt * dt;
    double sp = detail::kSinCoef[8];
    double cp = detail::kCosCoef[8];
    for (int j = 7; j >= 0; --j) {
        sp = std::fma(sp, w, detail::kSinCoef[j]);
        cp = std::fma(cp, w, detail::kCosCoef[j]);
    }
    sp *= dt;
    switch (static_cast<int>(m)) {
        case 1: c_out = -sp; s_out = cp; break;
        case 2: c_out = -cp; s_out = -sp; break;
        case 3: c_out = sp; s_out = -cp; break;
        default: c_out = cp; s_out = sp; break;  // 0 and 4 are the same turn
    }
}

inline std::complex<double> cis_unit(double t) {
    double c, s;
    cis_unit(t, c, s);
    return {c, s};
}

// Branchless Kahan-Babuska-Neumaier accumulator (two_sum form).  The
// correction joins the total only at read-out.
struct CompSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        double xp = t - s;
        double sp = t - xp;
        c += (s - sp) + (x - xp);
        s = t;
    }
    void merge(const CompSum& o) {
        add(o.s);
        c += o.c;
    }
    double value() const { return s + c; }
};

struct CompComplex {
    CompSum re;
    CompSum im;
    void add(double r, double i) {
        re.add(r);
        im.add(i);
    }
    void add(std::complex<double> z) { add(z.real(), z.imag()); }
    void merge(const CompComplex& o) {
        re.merge(o.re);
        im.merge(o.im);
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace modcorr
