// ---------------------------------------------------------------------------
// counting: sliding-window point counts on the torus and exact moments.
//
// W(Y) counts points in the closed window [Y, Y+w] mod 1 with w = L/N.
// W is a step function of Y, so \int_0^1 W(Y)^m dY is computed exactly by
// sweeping its breakpoints; no sampling error enters.  A window hitting
// count L on average gives target moment L^m under Poisson statistics.
// ---------------------------------------------------------------------------
#pragma once

#include <cstdint>
#include <vector>

#include "modcorr/seqgen.hpp"

namespace modcorr {

// Number of points x_n with Y <= x_n <= Y+w on the torus (window closed on
// both ends, width w < 1).  Requires a sorted PointSet.
std::int64_t count_window(const PointSet& sorted_points, double y, double width);

struct WindowStatistic {
    std::int64_t n_points = 0;
    int m = 1;
    double window_len = 0.0;   // L; window width is L/N
    double moment = 0.0;       // exact \int_0^1 W(Y)^m dY
    double target = 0.0;       // L^m
    double ratio = 0.0;
    double seconds = 0.0;
};

// Exact m-th moment of W over all window positions.  Requires a sorted
// PointSet, m in [1, 8], and 0 < L < N.
WindowStatistic moment_exact(const PointSet& sorted_points, double window_len, int m);

// Moment rows over an N grid with L = N^(1-tau).
std::vector<WindowStatistic> moment_scan(const SequenceSpec& spec, int m, double tau,
                                         const std::vector<std::int64_t>& n_grid);

}  // namespace modcorr
