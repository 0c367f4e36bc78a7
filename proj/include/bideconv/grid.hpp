#pragma once

#include <vector>

#include "bideconv/types.hpp"

namespace bideconv {

// The m x m discretisation of one observation pair: m equal intervals
// tiling [0, y0] and [0, y1] per axis. Cell indices r, s are 1-based,
// matching the interval definitions C_r = [(r-1) y/m, r y/m]; the last
// cells contain the realisations. Logs of midpoints and upper bounds are
// cached because likelihood evaluation revisits the same grid for every
// parameter proposal.
struct Grid {
    int m = 0;
    double y0 = 0.0;
    double y1 = 0.0;
    double s0 = 0.0;  // interval length on axis 0 (= y0 / m)
    double s1 = 0.0;

    std::vector<double> log_mid0, log_mid1;      // log of cell midpoints, index r-1
    std::vector<double> log_upper0, log_upper1;  // log of cell upper bounds, index r-1

    double lower0(int r) const { return (r - 1) * s0; }
    double upper0(int r) const { return r == m ? y0 : r * s0; }
    double mid0(int r) const { return (r - 0.5) * s0; }
    double lower1(int s) const { return (s - 1) * s1; }
    double upper1(int s) const { return s == m ? y1 : s * s1; }
    double mid1(int s) const { return (s - 0.5) * s1; }
};

Grid build_grid(const PairedObservation &obs, int m);

// Midpoint cell mass: S0 * S1 * f(mid0(r), mid1(s)) under p.
double cell_mass_midpoint(const ComponentParams &p, const Grid &g, int r, int s);

// True when the cell sits in the first row or column and the component's
// (already shifted) log-mean on that axis lies below the log of the
// first-cell midpoint of the same axis -- the bins where nearly all of
// the component's mass collapses and the midpoint rule breaks down.
bool is_edge_cell(const ComponentParams &p, const Grid &g, int r, int s);

// Exact rectangle probability of the cell from four CDF corners. Lower
// bounds of first-row/column cells are 0, so those corner terms vanish.
double cell_mass_cdf(const ComponentParams &p, const Grid &g, int r, int s);

}  // namespace bideconv
