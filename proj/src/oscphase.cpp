#include "modcorr/oscphase.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "modcorr/cis.hpp"
#include "modcorr/errors.hpp"

namespace modcorr {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 12-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr double kGlNode[6] = {
    0.12523340851146891547, 0.36783149899818019375, 0.58731795428661744730,
    0.76990267419430468704, 0.90411725637047485668, 0.98156063424671925069,
};
constexpr double kGlWeight[6] = {
    0.24914704581340278500, 0.23349253653835480876, 0.20316742672306592175,
    0.16007832854334622633, 0.10693932599531843096, 0.04717533638651182719,
};

struct PhaseFn {
    Real2 kalpha;
    double r;

    Real2 value(double x) const {
        return kalpha * sqrt2_from_double(x) - two_prod(r, x);
    }
    double velocity(double x) const {
        return kalpha.to_double() / (2.0 * std::sqrt(x)) - r;
    }
    std::complex<double> unit(double x) const {
        return cis_unit(frac2_to_unit_double(value(x)));
    }
};

std::complex<double> gl12(const PhaseFn& h, double x0, double x1) {
    double mid = 0.5 * (x0 + x1);
    double half = 0.5 * (x1 - x0);
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < 6; ++i) {
        double dx = half * kGlNode[i];
        acc += kGlWeight[i] * (h.unit(mid - dx) + h.unit(mid + dx));
    }
    return acc * half;
}

}  // namespace

std::complex<double> oscillatory_integral_direct(std::int64_t k, std::int64_t r, Real2 alpha,
                                                 double a, double b, double tol) {
    if (!(alpha.hi > 0.0)) throw precondition_error("oscillatory_integral: alpha must be positive");
    if (k < 0) throw precondition_error("oscillatory_integral: k must be nonnegative");
    if (!(a >= 1.0) || !(b > a))
        throw precondition_error("oscillatory_integral: need 1 <= a < b");
    if (!(tol > 0.0)) throw precondition_error("oscillatory_integral: tol must be positive");

    PhaseFn h{alpha * static_cast<double>(k), static_cast<double>(r)};
    double tol_density = tol / (b - a);

    struct Panel {
        double x0, x1;
    };
    std::vector<Panel> stack;
    // Split at the stationary point first so every panel has monotone phase
    // velocity; the 1/2-variation rule then caps oscillation per panel.
    if (k >= 1 && r >= 1) {
        Real2 g = alpha * static_cast<double>(k) / (2.0 * static_cast<double>(r));
        double gamma = (g * g).to_double();
        if (gamma > a && gamma < b) {
            stack.push_back({gamma, b});
            stack.push_back({a, gamma});
        }
    }
    if (stack.empty()) stack.push_back({a, b});

    std::complex<double> total{0.0, 0.0};
    long panels = 0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        if (++panels > 10000000L)
            throw cost_guard_error("oscillatory_integral: panel budget (1e7) exhausted");
        double dh = (h.value(p.x1) - h.value(p.x0)).to_double();
        double mid = 0.5 * (p.x0 + p.x1);
        if (std::fabs(dh) > 0.5 && mid > p.x0 && mid < p.x1) {
            stack.push_back({mid, p.x1});
            stack.push_back({p.x0, mid});
            continue;
        }
        std::complex<double> coarse = gl12(h, p.x0, p.x1);
        std::complex<double> fine = gl12(h, p.x0, mid) + gl12(h, mid, p.x1);
        double width = p.x1 - p.x0;
        // Node positions round to eps*x and the phase magnifies that by |h'|,
        // so |fine - coarse| bottoms out at evaluation noise; below that level
        // further splits stall instead of converging.
        double vel = std::max(std::fabs(h.velocity(p.x0)), std::fabs(h.velocity(p.x1)));
        double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + vel * p.x1) * width;
        if (std::abs(fine - coarse) <= std::max(tol_density * width, noise) || !(mid > p.x0) ||
            !(mid < p.x1)) {
            total += fine;
        } else {
            stack.push_back({mid, p.x1});
            stack.push_back({p.x0, mid});
        }
    }
    return total;
}

OscillatoryIntegral stationary_phase_leading(std::int64_t k, std::int64_t r, Real2 alpha,
                                             std::int64_t n_range) {
    if (!(alpha.hi > 0.0))
        throw precondition_error("stationary_phase_leading: alpha must be positive");
    if (k < 1) throw precondition_error("stationary_phase_leading: k must be at least 1");
    if (n_range < 2) throw precondition_error("stationary_phase_leading: N must be at least 2");
    double nd = static_cast<double>(n_range);
    Real2 ka = alpha * static_cast<double>(k);
    double a_edge = (ka / (2.0 * std::sqrt(nd))).to_double();
    double b_edge = (ka / 2.0).to_double();
    double rd = static_cast<double>(r);
    if (!(r >= 1) || !(rd > a_edge) || !(rd < b_edge))
        throw precondition_error(
            "stationary_phase_leading: no interior stationary point; need r in (" +
            std::to_string(a_edge) + ", " + std::to_string(b_edge) + "), got r = " +
            std::to_string(r));

    Real2 g = ka / (2.0 * rd);
    Real2 gamma = g * g;
    Real2 h_gamma = (ka * ka) / (4.0 * rd);
    double gamma_d = gamma.to_double();
    double hpp = -(ka.to_double()) / (4.0 * gamma_d * std::sqrt(gamma_d));

    // e(h(gamma) - 1/8) / sqrt(|h''|): concave phase, sigma = -1.
    Real2 phase = h_gamma - 0.125;
    std::complex<double> unit = cis_unit(frac2_to_unit_double(phase));
    double amp = 1.0 / std::sqrt(std::fabs(hpp));

    OscillatoryIntegral out;
    out.k = k;
    out.r = r;
    out.n_range = n_range;
    out.gamma = gamma_d;
    out.h_at_gamma = h_gamma.to_double();
    out.hpp_at_gamma = hpp;
    out.leading = amp * unit;
    double hp_at_1 = b_edge - rd;        // h'(1) = k*alpha/2 - r > 0
    double hp_at_n = rd - a_edge;        // |h'(N)| = r - k*alpha/(2*sqrt(N)) > 0
    double kd = static_cast<double>(k);
    out.envelope = 5.0 * (1.0 / hp_at_1 + 1.0 / hp_at_n) +
                   5.0 * (std::pow(nd, 0.25) / (kd * std::sqrt(kd)) +
                          std::sqrt(nd) / (kd * kd));
    return out;
}

BoundCertificate derivative_test_bound(int order, std::int64_t k, std::int64_t r, Real2 alpha,
                                       double a, double b) {
    if (!(alpha.hi > 0.0))
        throw precondition_error("derivative_test_bound: alpha must be positive");
    if (!(a >= 1.0) || !(b > a))
        throw precondition_error("derivative_test_bound: need 1 <= a < b");
    double ka = (alpha * static_cast<double>(k)).to_double();
    double rd = static_cast<double>(r);
    BoundCertificate cert;
    cert.order = order;
    if (order == 1) {
        // h'(x) = k*alpha/(2*sqrt(x)) - r decreases, so its sign is fixed
        // exactly when the endpoint values agree in sign.
        double hp_a = ka / (2.0 * std::sqrt(a)) - rd;
        double hp_b = ka / (2.0 * std::sqrt(b)) - rd;
        if (hp_a == 0.0 || hp_b == 0.0 || (hp_a > 0.0) != (hp_b > 0.0))
            throw precondition_error(
                "derivative_test_bound: h' changes sign on the interval; use order 2");
        cert.min_abs_deriv = std::min(std::fabs(hp_a), std::fabs(hp_b));
        cert.value = 1.0 / cert.min_abs_deriv;
        return cert;
    }
    if (order == 2) {
        if (k < 1)
            throw precondition_error("derivative_test_bound: order 2 needs k >= 1");
        // |h''(x)| = k*alpha/(4*x^(3/2)) is smallest at x = b.
        cert.min_abs_deriv = ka / (4.0 * b * std::sqrt(b));
        cert.value = 1.0 / std::sqrt(cert.min_abs_deriv);
        return cert;
    }
    throw precondition_error("derivative_test_bound: order must be 1 or 2");
}

PoissonRange truncated_poisson_range(std::int64_t k, Real2 alpha, std::int64_t n_range) {
    if (!(alpha.hi > 0.0))
        throw precondition_error("truncated_poisson_range: alpha must be positive");
    if (k < 1) throw precondition_error("truncated_poisson_range: k must be at least 1");
    if (n_range < 2) throw precondition_error("truncated_poisson_range: N must be at least 2");
    PoissonRange out;
    Real2 ka = alpha * static_cast<double>(k);
    out.a_edge = (ka / (2.0 * std::sqrt(static_cast<double>(n_range)))).to_double();
    out.b_edge = (ka / 2.0).to_double();
    out.zero_mode = out.a_edge - 0.25 < 0.0;
    auto r_lo = static_cast<std::int64_t>(std::floor(out.a_edge - 0.25)) + 1;
    if (r_lo < 1) r_lo = 1;
    for (std::int64_t r = r_lo; static_cast<double>(r) < out.b_edge + 0.25; ++r)
        out.r_list.push_back(r);
    return out;
}

WeylSumRecord bprocess_sum(const SequenceSpec& spec, std::int64_t n_terms, std::int64_t k) {
    validate_spec(spec);
    if (spec.family != Family::Sqrt)
        throw precondition_error("bprocess_sum: only the sqrt family is supported");
    if (k < 1) throw precondition_error("bprocess_sum: k must be at least 1");
    if (n_terms < 4) throw precondition_error("bprocess_sum: N must be at least 4");
    auto t0 = std::chrono::steady_clock::now();

    PoissonRange range = truncated_poisson_range(k, spec.alpha, n_terms);
    double nd = static_cast<double>(n_terms);
    double kd = static_cast<double>(k);
    double ka = (spec.alpha * kd).to_double();

    CompComplex acc;
    CompSum budget;
    for (std::int64_t r : range.r_list) {
        double rd = static_cast<double>(r);
        bool interior = rd > range.a_edge + 0.25 && rd < range.b_edge - 0.25;
        if (interior) {
            OscillatoryIntegral spi = stationary_phase_leading(k, r, spec.alpha, n_terms);
            acc.add(spi.leading);
            budget.add(spi.envelope);
        } else {
            // Edge mode: keep only the second-derivative bound on [1, N].
            budget.add(derivative_test_bound(2, k, r, spec.alpha, 1.0, nd).value);
        }
    }
    if (range.zero_mode) {
        // r = 0: monotone phase, first derivative test with minimum slope
        // k*alpha/(2*sqrt(N)).
        budget.add(2.0 * std::sqrt(nd) / (kPi * ka));
    }
    // Poisson truncation plus endpoint series; the endpoint term blows up
    // when B sits next to an integer, capped by the second-derivative shape.
    double b_dist = std::fabs(range.b_edge - std::nearbyint(range.b_edge));
    double endpoint_cap = std::pow(nd, 0.75) / std::sqrt(kd);
    double endpoint = b_dist > 0.0 ? std::min(1.0 / b_dist, endpoint_cap) : endpoint_cap;
    budget.add(2.0 * (std::log(nd) + endpoint));

    WeylSumRecord rec;
    rec.n_terms = n_terms;
    rec.k = k;
    rec.method = SumMethod::BProcess;
    rec.value = acc.value();
    rec.error_budget = budget.value();
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

double bound_exponential(std::int64_t n_terms, std::int64_t k) {
    if (k < 1) throw precondition_error("bound_exponential: k must be at least 1");
    if (n_terms < 2) throw precondition_error("bound_exponential: N must be at least 2");
    double nd = static_cast<double>(n_terms);
    double kd = static_cast<double>(k);
    return std::sqrt(kd) * std::pow(nd, 0.25) +
           std::pow(nd, 0.75) / std::sqrt(kd) * std::log(nd);
}

}  // namespace modcorr
