// ---------------------------------------------------------------------------
// real2: unevaluated double-double arithmetic.
//
// A Real2 stores a value as hi + lo with |lo| <= ulp(hi)/2, giving roughly
// 106 bits of significand.  Error-free transforms follow Dekker (1971) and
// the algorithm numbering of Joldes, Muller, Popescu (2017).  two_prod
// requires a correctly rounded fma.
//
// Relative error per operation is a few units of 2^-106; long derivations
// (constant parsing, exp/log chains) stay below 1e-30 relative, which is the
// contract the sequence generators rely on.
// ---------------------------------------------------------------------------
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modcorr {

struct Real2 {
    double hi = 0.0;
    double lo = 0.0;

    Real2() = default;
    constexpr Real2(double h, double l) : hi(h), lo(l) {}
    constexpr Real2(double h) : hi(h), lo(0.0) {}

    double to_double() const { return hi; }  // hi is the correctly rounded value
};

// two_sum: s + e == a + b exactly, s = fl(a + b).  6 flops, no branch.
inline Real2 two_sum(double a, double b) {
    double s = a + b;
    double ap = s - b;
    double bp = s - ap;
    double e = (a - ap) + (b - bp);
    return {s, e};
}

// fast_two_sum: requires |a| >= |b| (or a == 0).  3 flops.
inline Real2 fast_two_sum(double a, double b) {
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
}

// two_prod: p + e == a * b exactly.
inline Real2 two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

inline Real2 renorm(double hi, double lo) { return fast_two_sum(hi, lo); }

inline Real2 operator-(Real2 a) { return {-a.hi, -a.lo}; }

inline Real2 operator+(Real2 a, double b) {
    Real2 s = two_sum(a.hi, b);
    return fast_two_sum(s.hi, s.lo + a.lo);
}

inline Real2 operator+(Real2 a, Real2 b) {  // accurate variant, Joldes alg. 6
    Real2 s = two_sum(a.hi, b.hi);
    Real2 t = two_sum(a.lo, b.lo);
    double c = s.lo + t.hi;
    Real2 v = fast_two_sum(s.hi, c);
    return fast_two_sum(v.hi, t.lo + v.lo);
}

inline Real2 operator-(Real2 a, Real2 b) { return a + (-b); }
inline Real2 operator-(Real2 a, double b) { return a + (-b); }
inline Real2 operator-(double a, Real2 b) { return Real2(a) + (-b); }

inline Real2 operator*(Real2 a, double b) {  // Joldes alg. 9
    Real2 p = two_prod(a.hi, b);
    return fast_two_sum(p.hi, std::fma(a.lo, b, p.lo));
}

inline Real2 operator*(Real2 a, Real2 b) {  // Joldes alg. 12
    Real2 p = two_prod(a.hi, b.hi);
    double t = std::fma(a.hi, b.lo, std::fma(a.lo, b.hi, p.lo));
    return fast_two_sum(p.hi, t);
}

inline Real2 operator/(Real2 a, double b) {  // Joldes alg. 15
    double th = a.hi / b;
    Real2 p = two_prod(th, b);
    double dh = a.hi - p.hi;
    double dl = (dh - p.lo) + a.lo;
    return fast_two_sum(th, dl / b);
}

inline Real2 operator/(Real2 a, Real2 b) {  // Joldes alg. 18
    double th = a.hi / b.hi;
    Real2 r = b * th;
    double ph = a.hi - r.hi;
    double dl = a.lo - r.lo;
    return fast_two_sum(th, (ph + dl) / b.hi);
}

inline Real2 operator+(double a, Real2 b) { return b + a; }
inline Real2 operator*(double a, Real2 b) { return b * a; }
inline Real2 operator/(double a, Real2 b) { return Real2(a) / b; }

inline bool operator<(Real2 a, Real2 b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(Real2 a, Real2 b) { return b < a; }
inline bool operator==(Real2 a, Real2 b) { return a.hi == b.hi && a.lo == b.lo; }

inline Real2 abs(Real2 a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

// sqrt of a nonnegative double: hardware root plus one fma-corrected Newton
// step.  Error is O(u^2) relative.
inline Real2 sqrt2_from_double(double a) {
    if (a == 0.0) return {0.0, 0.0};
    double h = std::sqrt(a);
    double l = std::fma(-h, h, a) / (2.0 * h);
    return fast_two_sum(h, l);
}

// sqrt of a Real2 via one further Newton step on the double-double residual.
inline Real2 sqrt2(Real2 a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {0.0, 0.0};
    Real2 y = sqrt2_from_double(a.hi);
    Real2 resid = a - y * y;
    return y + resid / (2.0 * y.hi);
}

// floor / fractional part.  floor(hi) is exact for every double; the
// adjustment loop runs at most twice.
inline Real2 floor2(Real2 a) {
    double fh = std::floor(a.hi);
    if (fh != a.hi) return {fh, 0.0};
    double fl = std::floor(a.lo);
    return fast_two_sum(fh, fl);
}

// Value-level comparisons against the unit interval.  A normalized Real2
// just below 1 is stored as {1.0, -tiny}, so hi alone cannot decide.
inline bool unit_lt_zero(Real2 f) { return f.hi < 0.0 || (f.hi == 0.0 && f.lo < 0.0); }
inline bool unit_ge_one(Real2 f) { return f.hi > 1.0 || (f.hi == 1.0 && f.lo >= 0.0); }

// frac2: value reduced into [0, 1).  floor2 is exact, so at most one
// wrap step is needed; the result may be stored as {1.0, -tiny}.
inline Real2 frac2(Real2 a) {
    Real2 f = a - floor2(a);
    if (unit_lt_zero(f)) f = f + 1.0;
    if (unit_ge_one(f)) f = f - 1.0;
    if (unit_lt_zero(f)) f = {0.0, 0.0};
    return f;
}

// frac2 collapsed to a double in [0, 1); a value within one ulp of 1 wraps
// to 0, which is the same point mod 1.
inline double frac2_to_unit_double(Real2 a) {
    Real2 f = frac2(a);
    double d = f.hi + f.lo;
    if (d >= 1.0) d = 0.0;
    if (d < 0.0) d = 0.0;
    return d;
}

// ln 2 to double-double precision (needed by exp2r range reduction).
inline Real2 ln2_const();

// exp of a Real2 with |a| <= ~709.  Range-reduce by ln 2, Taylor series on
// the remainder (|rem| <= 0.347, 24 terms reach 2^-106), scale back by 2^m.
inline Real2 exp2r(Real2 a) {
    if (a.hi > 709.0) throw std::overflow_error("exp2r: argument too large");
    if (a.hi < -709.0) return {0.0, 0.0};
    double m = std::nearbyint(a.hi / 6.931471805599453e-01);
    Real2 rem = a - ln2_const() * m;
    Real2 sum{1.0, 0.0};
    Real2 term{1.0, 0.0};
    for (int i = 1; i <= 24; ++i) {
        term = term * rem / static_cast<double>(i);
        sum = sum + term;
    }
    double scale = std::ldexp(1.0, static_cast<int>(m));
    return {sum.hi * scale, sum.lo * scale};
}

// log of a positive double.  One correction step against exp2r brings the
// libm seed to O(u^2):  l = l0 + (x*exp(-l0) - 1) - r^2/2.
inline Real2 log2r(double x) {
    if (!(x > 0.0)) throw std::domain_error("log2r: argument must be positive");
    double l0 = std::log(x);
    Real2 r = Real2(x) * exp2r(Real2(-l0)) - 1.0;
    Real2 corr = r - (r * r) / 2.0;
    return Real2(l0) + corr;
}

// Parse a plain decimal literal ("1.414...", sign optional) into a Real2.
// Digits accumulate in double-double Horner form; with 40+ digit literals the
// result carries at least 30 correct significant digits.
inline Real2 parse_decimal(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    Real2 value{0.0, 0.0};
    int frac_digits = -1;
    bool any = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (frac_digits >= 0) throw std::invalid_argument("parse_decimal: repeated dot");
            frac_digits = 0;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("parse_decimal: bad character");
        value = value * 10.0 + static_cast<double>(c - '0');
        if (frac_digits >= 0) ++frac_digits;
        any = true;
    }
    if (!any) throw std::invalid_argument("parse_decimal: no digits");
    if (frac_digits > 0) {
        Real2 scale{1.0, 0.0};
        for (int d = 0; d < frac_digits; ++d) scale = scale * 10.0;
        value = value / scale;
    }
    return neg ? -value : value;
}

inline Real2 ln2_const() {
    static const Real2 v = parse_decimal("0.6931471805599453094172321214581765680755001343603");
    return v;
}

// Named irrational constants, parsed once from 50-digit decimal literals.
inline Real2 const_sqrt2() {
    static const Real2 v = parse_decimal("1.4142135623730950488016887242096980785696718753769");
    return v;
}
inline Real2 const_sqrt3() {
    static const Real2 v = parse_decimal("1.7320508075688772935274463415058723669428052538104");
    return v;
}
inline Real2 const_sqrt5() {
    static const Real2 v = parse_decimal("2.2360679774997896964091736687312762354406183596115");
    return v;
}
inline Real2 const_golden() {
    static const Real2 v = parse_decimal("1.6180339887498948482045868343656381177203091798058");
    return v;
}

// Resolve an alpha given either a named constant or a decimal literal.
inline Real2 resolve_alpha(std::string_view name) {
    if (name == "sqrt2") return const_sqrt2();
    if (name == "sqrt3") return const_sqrt3();
    if (name == "sqrt5") return const_sqrt5();
    if (name == "golden") return const_golden();
    return parse_decimal(name);
}

}  // namespace modcorr
