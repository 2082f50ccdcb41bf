#include "modcorr/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "modcorr/cis.hpp"
#include "modcorr/errors.hpp"

namespace modcorr {

namespace {

double wrap_unit(double t) {
    t -= std::floor(t);
    if (t >= 1.0 || t < 0.0) t = 0.0;
    return t;
}

double ipow(double base, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= base;
    return r;
}

void require_sorted(const PointSet& ps, const char* who) {
    if (!ps.sorted)
        throw precondition_error(std::string(who) + ": PointSet must be value-sorted");
}

}  // namespace

std::int64_t count_window(const PointSet& sorted_points, double y, double width) {
    require_sorted(sorted_points, "count_window");
    if (!(width > 0.0) || !(width < 1.0))
        throw precondition_error("count_window: width must lie in (0, 1)");
    y = wrap_unit(y);
    const auto& v = sorted_points.values;
    double end = y + width;
    auto first = std::lower_bound(v.begin(), v.end(), y);
    if (end < 1.0) {
        auto last = std::upper_bound(v.begin(), v.end(), end);
        return last - first;
    }
    auto wrapped = std::upper_bound(v.begin(), v.end(), end - 1.0);
    return (v.end() - first) + (wrapped - v.begin());
}

WindowStatistic moment_exact(const PointSet& sorted_points, double window_len, int m) {
    require_sorted(sorted_points, "moment_exact");
    auto n = static_cast<std::int64_t>(sorted_points.values.size());
    if (n < 1) throw precondition_error("moment_exact: empty point set");
    if (m < 1 || m > 8) throw precondition_error("moment_exact: m must lie in [1, 8]");
    if (!(window_len > 0.0) || !(window_len < static_cast<double>(n)))
        throw precondition_error("moment_exact: need 0 < L < N");
    auto t0 = std::chrono::steady_clock::now();

    double w = window_len / static_cast<double>(n);
    // The window [Y, Y+w] contains x exactly when Y lies in [x-w, x]; W(Y)
    // is the number of such covering intervals, a step function whose
    // breakpoints are the interval ends.
    struct Event {
        double pos;
        int delta;
    };
    // Activations at position exactly 0 are already inside the Y = 0 count,
    // so replaying them would double-count; they drop out of the event list.
    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(2 * n));
    std::int64_t pre_counted = 0;
    for (double x : sorted_points.values) {
        double start = wrap_unit(x - w);
        if (start == 0.0)
            ++pre_counted;
        else
            events.push_back({start, +1});
        events.push_back({x, -1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        return a.delta < b.delta;
    });

    std::int64_t level = count_window(sorted_points, 0.0, w);
    std::int64_t level0 = level;
    CompSum integral;
    double prev = 0.0;
    for (const Event& e : events) {
        integral.add(ipow(static_cast<double>(level), m) * (e.pos - prev));
        level += e.delta;
        prev = e.pos;
    }
    integral.add(ipow(static_cast<double>(level), m) * (1.0 - prev));
    // Every replayed +1 pairs with a -1; the deltas of the pre-counted
    // activations were never replayed, so the sweep closes short of them.
    if (level != level0 - pre_counted)
        throw precondition_error("moment_exact: breakpoint sweep failed to close");

    WindowStatistic out;
    out.n_points = n;
    out.m = m;
    out.window_len = window_len;
    out.moment = integral.value();
    out.target = ipow(window_len, m);
    out.ratio = out.target > 0.0 ? out.moment / out.target : 0.0;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<WindowStatistic> moment_scan(const SequenceSpec& spec, int m, double tau,
                                         const std::vector<std::int64_t>& n_grid) {
    validate_spec(spec);
    if (!(tau > 0.0) || !(tau < 1.0))
        throw precondition_error("moment_scan: tau must lie in (0, 1)");
    std::vector<WindowStatistic> rows;
    rows.reserve(n_grid.size());
    for (std::int64_t n : n_grid) {
        PointSet ps = sort_points(generate_points(spec, n));
        double window_len = std::pow(static_cast<double>(n), 1.0 - tau);
        rows.push_back(moment_exact(ps, window_len, m));
    }
    return rows;
}

}  // namespace modcorr
