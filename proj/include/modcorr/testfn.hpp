// ---------------------------------------------------------------------------
// testfn: compactly supported test functions on the line, and products of
// them for multi-dimensional correlation integrands.
//
//   Bump(r)      exp(-1/(1-(x/r)^2)) on (-r, r), zero outside
//   Triangle(r)  1 - |x|/r on [-r, r]
//   Box(lo, hi)  indicator of the closed interval [lo, hi]
//
// Integrals are closed-form where possible; the bump mass comes from
// adaptive quadrature with an error estimate well below 1e-12 and is cached
// per radius.  fourier(xi) returns \int f(x) e(x xi) dx.
// ---------------------------------------------------------------------------
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace modcorr {

enum class Kind1D { Bump, Triangle, Box };

const char* kind_name(Kind1D k);

class TestFunction1D {
public:
    static TestFunction1D bump(double radius);
    static TestFunction1D triangle(double radius);
    static TestFunction1D box(double lo, double hi);

    Kind1D kind() const { return kind_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    // Largest |x| in the support; the correlation window condition uses it.
    double support_radius() const;

    double eval(double x) const;
    double integral() const;
    std::complex<double> fourier(double xi) const;
    std::string label() const;

private:
    TestFunction1D(Kind1D kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}
    Kind1D kind_;
    double lo_;
    double hi_;
};

// Product over coordinates; evaluates factor d at diffs[d].
struct ProductTestFunction {
    std::vector<TestFunction1D> factors;

    int dim() const { return static_cast<int>(factors.size()); }
    double integral() const;
    double eval(const double* diffs) const;
};

// Recursive adaptive Simpson integration.  The local acceptance test
// compares against the two-panel refinement with the usual 1/15 safety
// factor; eval_budget guards runaway recursion.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        long eval_budget = 50000000L);

}  // namespace modcorr
