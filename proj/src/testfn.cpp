#include "modcorr/testfn.hpp"

#include <cmath>

#include "modcorr/cis.hpp"
#include "modcorr/errors.hpp"

namespace modcorr {

namespace {

constexpr double kPi = 3.14159265358979323846;

// e(t) for arbitrary real t, reduced into [0, 1) first.
std::complex<double> cis_any(double t) {
    double ph = t - std::floor(t);
    if (ph >= 1.0 || ph < 0.0) ph = 0.0;
    return cis_unit(ph);
}

struct SimpsonState {
    const std::function<double(double)>* f;
    long evals_left;
};

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    st.evals_left -= 2;
    if (st.evals_left < 0)
        throw cost_guard_error("adaptive_simpson: evaluation budget exhausted");
    double flm = (*st.f)(lm);
    double frm = (*st.f)(rm);
    double h6 = (b - a) / 12.0;
    double left = h6 * (fa + 4.0 * flm + fm);
    double right = h6 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth >= 52 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

// Unit bump mass, integrated once per process.  The integrand is smooth with
// all derivatives vanishing at the endpoints, so Simpson refinement is clean.
double unit_bump_mass() {
    static const double mass = [] {
        auto f = [](double t) {
            double w = 1.0 - t * t;
            return w > 0.0 ? std::exp(-1.0 / w) : 0.0;
        };
        return adaptive_simpson(f, -1.0, 1.0, 1e-14);
    }();
    return mass;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        long eval_budget) {
    if (!(b > a)) return 0.0;
    SimpsonState st{&f, eval_budget - 3};
    double fa = f(a);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(st, a, b, fa, fm, fb, whole, tol, 0);
}

const char* kind_name(Kind1D k) {
    switch (k) {
        case Kind1D::Bump: return "bump";
        case Kind1D::Triangle: return "triangle";
        case Kind1D::Box: return "box";
    }
    return "?";
}

TestFunction1D TestFunction1D::bump(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw precondition_error("bump: radius must be positive");
    return {Kind1D::Bump, -radius, radius};
}

TestFunction1D TestFunction1D::triangle(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw precondition_error("triangle: radius must be positive");
    return {Kind1D::Triangle, -radius, radius};
}

TestFunction1D TestFunction1D::box(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw precondition_error("box: need lo < hi, both finite");
    return {Kind1D::Box, lo, hi};
}

double TestFunction1D::support_radius() const {
    return std::max(std::fabs(lo_), std::fabs(hi_));
}

double TestFunction1D::eval(double x) const {
    switch (kind_) {
        case Kind1D::Bump: {
            double t = x / hi_;
            double w = 1.0 - t * t;
            return w > 0.0 ? std::exp(-1.0 / w) : 0.0;
        }
        case Kind1D::Triangle: {
            double t = std::fabs(x) / hi_;
            return t < 1.0 ? 1.0 - t : 0.0;
        }
        case Kind1D::Box:
            return (x >= lo_ && x <= hi_) ? 1.0 : 0.0;
    }
    return 0.0;
}

double TestFunction1D::integral() const {
    switch (kind_) {
        case Kind1D::Bump:
            return hi_ * unit_bump_mass();
        case Kind1D::Triangle:
            return hi_;  // peak 1, base 2*radius
        case Kind1D::Box:
            return hi_ - lo_;
    }
    return 0.0;
}

std::complex<double> TestFunction1D::fourier(double xi) const {
    if (xi == 0.0) return {integral(), 0.0};
    switch (kind_) {
        case Kind1D::Box: {
            // (e(hi*xi) - e(lo*xi)) / (2 pi i xi)
            std::complex<double> num = cis_any(hi_ * xi) - cis_any(lo_ * xi);
            return num / std::complex<double>(0.0, 2.0 * kPi * xi);
        }
        case Kind1D::Triangle: {
            double z = kPi * hi_ * xi;
            double s = std::sin(z) / z;
            return {hi_ * s * s, 0.0};
        }
        case Kind1D::Bump: {
            // Even function: transform is real.  Oscillation scales with
            // radius*xi, so the budget is generous but still guarded.
            double r = hi_;
            auto g = [r, xi](double x) {
                double t = x / r;
                double w = 1.0 - t * t;
                return w > 0.0 ? std::exp(-1.0 / w) * cis_any(x * xi).real() : 0.0;
            };
            double re = adaptive_simpson(g, -r, r, 1e-12);
            return {re, 0.0};
        }
    }
    return {0.0, 0.0};
}

std::string TestFunction1D::label() const {
    char buf[64];
    if (kind_ == Kind1D::Box)
        std::snprintf(buf, sizeof buf, "box(%g,%g)", lo_, hi_);
    else
        std::snprintf(buf, sizeof buf, "%s(%g)", kind_name(kind_), hi_);
    return buf;
}

double ProductTestFunction::integral() const {
    double prod = 1.0;
    for (const auto& f : factors) prod *= f.integral();
    return prod;
}

double ProductTestFunction::eval(const double* diffs) const {
    double prod = 1.0;
    for (std::size_t d = 0; d < factors.size(); ++d) {
        prod *= factors[d].eval(diffs[d]);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

}  // namespace modcorr
