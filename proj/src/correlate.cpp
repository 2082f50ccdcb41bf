#include "modcorr/correlate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "modcorr/cis.hpp"
#include "modcorr/errors.hpp"
#include "modcorr/parallel.hpp"

namespace modcorr {

namespace {

// Torus-nearest representative in [-1/2, 1/2).
inline double nearest_wrap(double d) {
    if (d >= 0.5) d -= 1.0;
    if (d < -0.5) d += 1.0;
    return d;
}

void check_request(std::int64_t n, int m, double tau, const ProductTestFunction& f) {
    if (n < 2) throw precondition_error("correlate: need at least 2 points");
    if (m < 2 || m > 8) throw precondition_error("correlate: m must lie in [2, 8]");
    if (!(tau >= 0.0) || !(tau < 1.0))
        throw precondition_error("correlate: tau must lie in [0, 1)");
    if (f.dim() != m - 1)
        throw precondition_error("correlate: product must have exactly m-1 factors");
    double scale = std::pow(static_cast<double>(n), -tau);
    for (const auto& fac : f.factors) {
        double reach = fac.support_radius() * scale;
        if (reach > 0.5)
            throw precondition_error("correlate: dilated support radius " +
                                     std::to_string(reach) + " exceeds 1/2 (radius " +
                                     std::to_string(fac.support_radius()) + ", tau " +
                                     std::to_string(tau) + "); torus representative ambiguous");
    }
}

struct ChainAccum {
    CompSum sum;
    std::uint64_t tuples = 0;
};

// Depth-first walk over chains anchored at sorted index `anchor`.  Each
// factor restricts the next point to a torus arc around the current one;
// the arc query over-includes by a few ulp and the factor evaluation makes
// the final in/out decision, so no boundary chain is lost to rounding.
class ChainWalker {
public:
    ChainWalker(const std::vector<double>& v, int m, double scale_up, double scale_down,
                const ProductTestFunction& f)
        : v_(v), n_(static_cast<std::int64_t>(v.size())), m_(m), scale_up_(scale_up),
          f_(f) {
        for (int d = 0; d < m - 1; ++d) {
            arc_lo_[d] = f.factors[static_cast<std::size_t>(d)].support_lo() * scale_down - 4e-16;
            arc_hi_[d] = f.factors[static_cast<std::size_t>(d)].support_hi() * scale_down + 4e-16;
        }
    }

    void run_anchor(std::int64_t anchor, ChainAccum& acc) {
        chain_[0] = anchor;
        descend(1, v_[static_cast<std::size_t>(anchor)], 1.0, acc);
    }

private:
    void descend(int depth, double x_cur, double prod, ChainAccum& acc) {
        const double lo = x_cur + arc_lo_[depth - 1];
        const double hi = x_cur + arc_hi_[depth - 1];
        if (hi - lo >= 1.0) {
            visit_range(depth, x_cur, prod, 0, n_, acc);
            return;
        }
        // Wrap each endpoint into [0,1) and resolve the arc as one or two
        // index ranges of the sorted array.
        double lo_w = lo - std::floor(lo);
        double hi_w = hi - std::floor(hi);
        auto lo_it = std::lower_bound(v_.begin(), v_.end(), lo_w);
        auto hi_it = std::upper_bound(v_.begin(), v_.end(), hi_w);
        std::int64_t lo_idx = lo_it - v_.begin();
        std::int64_t hi_idx = hi_it - v_.begin();
        if (lo_w <= hi_w) {
            visit_range(depth, x_cur, prod, lo_idx, hi_idx, acc);
        } else {
            visit_range(depth, x_cur, prod, lo_idx, n_, acc);
            visit_range(depth, x_cur, prod, 0, hi_idx, acc);
        }
    }

    void visit_range(int depth, double x_cur, double prod, std::int64_t begin, std::int64_t end,
                     ChainAccum& acc) {
        const auto& fac = f_.factors[static_cast<std::size_t>(depth - 1)];
        for (std::int64_t j = begin; j < end; ++j) {
            bool used = false;
            for (int d = 0; d < depth; ++d)
                if (chain_[d] == j) {
                    used = true;
                    break;
                }
            if (used) continue;
            double xj = v_[static_cast<std::size_t>(j)];
            double delta = nearest_wrap(xj - x_cur);
            double factor = fac.eval(scale_up_ * delta);
            if (factor == 0.0) continue;
            double p = prod * factor;
            if (depth == m_ - 1) {
                acc.sum.add(p);
                ++acc.tuples;
            } else {
                chain_[depth] = j;
                descend(depth + 1, xj, p, acc);
            }
        }
    }

    const std::vector<double>& v_;
    std::int64_t n_;
    int m_;
    double scale_up_;
    const ProductTestFunction& f_;
    double arc_lo_[8];
    double arc_hi_[8];
    std::int64_t chain_[8];
};

}  // namespace

double poisson_target(std::int64_t n_points, int m, double tau, const ProductTestFunction& f) {
    return std::pow(static_cast<double>(n_points), (m - 1) * (1.0 - tau)) * f.integral();
}

CorrelationReport correlate_windowed_points(const PointSet& sorted_points, int m, double tau,
                                            const ProductTestFunction& f, int threads) {
    if (!sorted_points.sorted)
        throw precondition_error("correlate_windowed: PointSet must be value-sorted");
    auto n = static_cast<std::int64_t>(sorted_points.values.size());
    check_request(n, m, tau, f);
    auto t0 = std::chrono::steady_clock::now();

    double nd = static_cast<double>(n);
    double scale_up = std::pow(nd, tau);
    double scale_down = std::pow(nd, -tau);

    std::int64_t n_blocks = deterministic_block_count(n);
    std::vector<ChainAccum> partial(static_cast<std::size_t>(n_blocks));
    run_blocks(n, threads, [&](std::int64_t block, std::int64_t begin, std::int64_t end) {
        ChainWalker walker(sorted_points.values, m, scale_up, scale_down, f);
        ChainAccum& acc = partial[static_cast<std::size_t>(block)];
        for (std::int64_t a = begin; a < end; ++a) walker.run_anchor(a, acc);
    });

    CompSum total;
    std::uint64_t tuples = 0;
    for (const auto& p : partial) {
        total.merge(p.sum);
        tuples += p.tuples;
    }

    CorrelationReport rep;
    rep.value = total.value() / nd;
    rep.target = poisson_target(n, m, tau, f);
    rep.ratio = rep.target != 0.0 ? rep.value / rep.target : 0.0;
    rep.tuples = tuples;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

CorrelationReport correlate_windowed(const CorrelationRequest& req, int threads) {
    validate_spec(req.spec);
    PointSet ps = sort_points(generate_points(req.spec, req.n_points));
    return correlate_windowed_points(ps, req.m, req.tau, req.f, threads);
}

CorrelationReport correlate_bruteforce_points(const PointSet& points, int m, double tau,
                                              const ProductTestFunction& f) {
    auto n = static_cast<std::int64_t>(points.values.size());
    check_request(n, m, tau, f);
    if (n > 2000 || m > 3)
        throw cost_guard_error("correlate_bruteforce: guarded to N <= 2000, m <= 3");
    auto t0 = std::chrono::steady_clock::now();

    double nd = static_cast<double>(n);
    double scale_up = std::pow(nd, tau);
    const auto& v = points.values;
    CompSum total;
    std::uint64_t tuples = 0;

    // Ordered distinct chains in the original index order; the two loops are
    // written out so this path shares no traversal logic with the walker.
    if (m == 2) {
        for (std::int64_t j1 = 0; j1 < n; ++j1)
            for (std::int64_t j2 = 0; j2 < n; ++j2) {
                if (j2 == j1) continue;
                double term = f.factors[0].eval(scale_up * nearest_wrap(v[j2] - v[j1]));
                if (term == 0.0) continue;
                total.add(term);
                ++tuples;
            }
    } else {
        for (std::int64_t j1 = 0; j1 < n; ++j1)
            for (std::int64_t j2 = 0; j2 < n; ++j2) {
                if (j2 == j1) continue;
                double f1 = f.factors[0].eval(scale_up * nearest_wrap(v[j2] - v[j1]));
                if (f1 == 0.0) continue;
                for (std::int64_t j3 = 0; j3 < n; ++j3) {
                    if (j3 == j1 || j3 == j2) continue;
                    double f2 = f.factors[1].eval(scale_up * nearest_wrap(v[j3] - v[j2]));
                    if (f2 == 0.0) continue;
                    total.add(f1 * f2);
                    ++tuples;
                }
            }
    }

    CorrelationReport rep;
    rep.value = total.value() / nd;
    rep.target = poisson_target(n, m, tau, f);
    rep.ratio = rep.target != 0.0 ? rep.value / rep.target : 0.0;
    rep.tuples = tuples;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

CorrelationReport correlate_bruteforce(const CorrelationRequest& req) {
    validate_spec(req.spec);
    PointSet ps = generate_points(req.spec, req.n_points);
    return correlate_bruteforce_points(ps, req.m, req.tau, req.f);
}

std::vector<CorrelationScanRow> correlation_scan(const SequenceSpec& spec, int m, double tau,
                                                 const ProductTestFunction& f,
                                                 const std::vector<std::int64_t>& n_grid,
                                                 int threads) {
    validate_spec(spec);
    std::vector<CorrelationScanRow> rows;
    rows.reserve(n_grid.size());
    for (std::int64_t n : n_grid) {
        CorrelationScanRow row;
        row.n_points = n;
        try {
            PointSet ps = sort_points(generate_points(spec, n));
            row.report = correlate_windowed_points(ps, m, tau, f, threads);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace modcorr
