#include "modcorr/weyl.hpp"

#include <chrono>
#include <cmath>

#include "modcorr/cis.hpp"
#include "modcorr/errors.hpp"
#include "modcorr/parallel.hpp"

namespace modcorr {

namespace {

constexpr double kPhaseTol = 1e-10;

}  // namespace

WeylSumRecord weyl_sum_direct(const SequenceSpec& spec, std::int64_t n_terms, std::int64_t k,
                              int threads) {
    validate_spec(spec);
    if (n_terms < 1 || n_terms > 100000000LL)
        throw precondition_error("weyl_sum_direct: N must lie in [1, 1e8]");
    auto t0 = std::chrono::steady_clock::now();

    WeylSumRecord rec;
    rec.n_terms = n_terms;
    rec.k = k;
    rec.method = SumMethod::Direct;
    if (k == 0) {
        rec.value = {static_cast<double>(n_terms), 0.0};
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rec;
    }
    // Worst-case certified phase error occurs at n = N; the whole sum is
    // refused if any term would exceed tolerance.
    double per_term = phase_error_bound(spec, n_terms, k);
    if (per_term > kPhaseTol)
        throw precision_loss_error("weyl_sum_direct: certified phase error " +
                                   std::to_string(per_term) + " exceeds 1e-10");

    std::int64_t n_blocks = deterministic_block_count(n_terms);
    std::vector<CompComplex> partial(static_cast<std::size_t>(n_blocks));
    run_blocks(n_terms, threads, [&](std::int64_t block, std::int64_t begin, std::int64_t end) {
        CompComplex acc;
        for (std::int64_t i = begin; i < end; ++i) {
            double c, s;
            cis_unit(phase_mod1(spec, i + 1, k), c, s);
            acc.add(c, s);
        }
        partial[static_cast<std::size_t>(block)] = acc;
    });
    CompComplex total;
    for (const auto& p : partial) total.merge(p);
    rec.value = total.value();
    // Phase error moves each unit vector by at most 2*pi*per_term.
    rec.error_budget = 6.2832 * per_term * static_cast<double>(n_terms);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<WeylSumRecord> weyl_scan(const SequenceSpec& spec, std::int64_t n_terms,
                                     std::int64_t k_max, int threads) {
    validate_spec(spec);
    if (n_terms < 1 || n_terms > 100000000LL)
        throw precondition_error("weyl_scan: N must lie in [1, 1e8]");
    if (k_max < 1 || k_max > 1000000)
        throw precondition_error("weyl_scan: k_max must lie in [1, 1e6]");
    if (static_cast<double>(n_terms) * static_cast<double>(k_max) > 1e11)
        throw cost_guard_error("weyl_scan: N * k_max exceeds 1e11");
    double drift = static_cast<double>(k_max) * 2.3e-16 +
                   phase_error_bound(spec, n_terms, k_max);
    if (drift > kPhaseTol)
        throw precision_loss_error("weyl_scan: accumulated phase drift " +
                                   std::to_string(drift) + " exceeds 1e-10");
    auto t0 = std::chrono::steady_clock::now();

    // steps[n] = x_n = frac(alpha * a(n)) doubles as the k = 1 phase table.
    std::vector<double> steps = generate_points(spec, n_terms).values;
    std::vector<double> phases = steps;

    std::vector<WeylSumRecord> out(static_cast<std::size_t>(k_max));
    auto n = static_cast<std::int64_t>(phases.size());
    std::int64_t n_blocks = deterministic_block_count(n);
    std::vector<CompComplex> partial(static_cast<std::size_t>(n_blocks));
    for (std::int64_t k = 1; k <= k_max; ++k) {
        run_blocks(n, threads, [&](std::int64_t block, std::int64_t begin, std::int64_t end) {
            CompComplex acc;
            if (k == 1) {
                for (std::int64_t i = begin; i < end; ++i) {
                    double c, s;
                    cis_unit(phases[static_cast<std::size_t>(i)], c, s);
                    acc.add(c, s);
                }
            } else {
                for (std::int64_t i = begin; i < end; ++i) {
                    double p = phases[static_cast<std::size_t>(i)] +
                               steps[static_cast<std::size_t>(i)];
                    if (p >= 1.0) p -= 1.0;
                    phases[static_cast<std::size_t>(i)] = p;
                    double c, s;
                    cis_unit(p, c, s);
                    acc.add(c, s);
                }
            }
            partial[static_cast<std::size_t>(block)] = acc;
        });
        CompComplex total;
        for (const auto& p : partial) total.merge(p);
        WeylSumRecord& rec = out[static_cast<std::size_t>(k - 1)];
        rec.n_terms = n_terms;
        rec.k = k;
        rec.value = total.value();
        rec.method = SumMethod::Direct;
        rec.error_budget = 6.2832 * static_cast<double>(n_terms) *
                           (static_cast<double>(k) * 2.3e-16 + phase_error_bound(spec, n_terms, k));
        rec.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
}

std::vector<double> weyl_magnitudes(const SequenceSpec& spec, std::int64_t n_terms,
                                    std::int64_t k_max, int threads) {
    std::vector<WeylSumRecord> recs = weyl_scan(spec, n_terms, k_max, threads);
    std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
    out[0] = static_cast<double>(n_terms);
    for (const auto& r : recs) out[static_cast<std::size_t>(r.k)] = std::abs(r.value);
    return out;
}

double tau_threshold(Family family, int m) {
    if (m < 2) throw precondition_error("tau_threshold: m must be at least 2");
    double md = m;
    switch (family) {
        case Family::Quadratic:
            return md / (2.0 * md - 2.0);
        case Family::Sqrt:
            return 3.0 * md / (6.0 * md - 4.0);
        case Family::Power:
            throw precondition_error("tau_threshold: no threshold shipped for the power family");
    }
    return 0.0;
}

ErrorTermReport error_term_rhs(const SequenceSpec& spec, int m, std::int64_t n_terms,
                               std::int64_t m_cap, double tau, int threads) {
    validate_spec(spec);
    if (m < 2 || m > 4) throw precondition_error("error_term_rhs: m must lie in [2, 4]");
    if (m_cap < 1) throw precondition_error("error_term_rhs: M must be at least 1");
    if (!(tau > 0.0) || !(tau < 1.0))
        throw precondition_error("error_term_rhs: tau must lie in (0, 1)");
    double span = 2.0 * static_cast<double>(m_cap);
    if (std::pow(span, m - 1) > 1e9)
        throw cost_guard_error("error_term_rhs: (2M)^(m-1) exceeds 1e9 tuples");
    auto t0 = std::chrono::steady_clock::now();

    // |S| table up to the largest |d(k)| = (m-1)(2M-1).
    std::int64_t k_need = static_cast<std::int64_t>(m - 1) * (2 * m_cap - 1);
    std::vector<double> mag = weyl_magnitudes(spec, n_terms, k_need, threads);
    auto s_of = [&](std::int64_t k) { return mag[static_cast<std::size_t>(k < 0 ? -k : k)]; };

    // E_level computes E_j for j in {2, 3, 4} over component range |k_i| < 2M.
    auto e_level = [&](int level) -> double {
        std::int64_t b = 2 * m_cap - 1;
        CompSum acc;
        if (level == 2) {
            for (std::int64_t k1 = 1; k1 <= b; ++k1) acc.add(2.0 * s_of(k1) * s_of(k1));
        } else if (level == 3) {
            for (std::int64_t k1 = -b; k1 <= b; ++k1)
                for (std::int64_t k2 = -b; k2 <= b; ++k2) {
                    if (k1 == 0 && k2 == 0) continue;
                    acc.add(s_of(-k1 - k2) * s_of(k1) * s_of(k2));
                }
        } else {
            for (std::int64_t k1 = -b; k1 <= b; ++k1)
                for (std::int64_t k2 = -b; k2 <= b; ++k2)
                    for (std::int64_t k3 = -b; k3 <= b; ++k3) {
                        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
                        acc.add(s_of(-k1 - k2 - k3) * s_of(k1) * s_of(k2) * s_of(k3));
                    }
        }
        return acc.value() / std::pow(static_cast<double>(n_terms), level);
    };

    ErrorTermReport rep;
    rep.m = m;
    rep.n_terms = n_terms;
    rep.m_cap = m_cap;
    rep.tau = tau;
    rep.level_m = e_level(m);
    rep.level_m1 = m == 2 ? 0.0 : e_level(m - 1);  // E_1 = 0 by convention
    rep.combined = rep.level_m +
                   static_cast<double>(m_cap) / std::pow(static_cast<double>(n_terms), tau) *
                       rep.level_m1;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<ThresholdRow> threshold_scan(const SequenceSpec& spec, int m,
                                         const std::vector<double>& taus,
                                         const std::vector<std::int64_t>& n_grid,
                                         int threads) {
    double critical = tau_threshold(spec.family, m);
    std::vector<ThresholdRow> rows;
    rows.reserve(taus.size() * n_grid.size());
    for (double tau : taus) {
        for (std::int64_t n : n_grid) {
            ThresholdRow row;
            row.m = m;
            row.tau = tau;
            row.n_terms = n;
            row.inside = tau <= critical + 1e-12;
            try {
                auto m_cap =
                    static_cast<std::int64_t>(std::pow(static_cast<double>(n), tau));
                row.m_cap = m_cap;
                row.combined = error_term_rhs(spec, m, n, m_cap, tau, threads).combined;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace modcorr
