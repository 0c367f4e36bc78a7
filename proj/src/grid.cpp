#include "bideconv/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "bideconv/bivariate_lognormal.hpp"

namespace bideconv {

namespace {

void check_indices(const Grid &g, int r, int s) {
    if (r < 1 || r > g.m || s < 1 || s > g.m)
        throw std::invalid_argument("grid cell index out of range");
}

}  // namespace

Grid build_grid(const PairedObservation &obs, int m) {
    if (m < 2) throw std::invalid_argument("build_grid: m must be >= 2");
    if (!(obs.y0 > 0.0) || !(obs.y1 > 0.0))
        throw std::invalid_argument("build_grid: counts must be > 0 (apply a pseudo-count upstream)");
    validate(obs, "build_grid");

    Grid g;
    g.m = m;
    g.y0 = obs.y0;
    g.y1 = obs.y1;
    g.s0 = obs.y0 / m;
    g.s1 = obs.y1 / m;
    g.log_mid0.resize(m);
    g.log_mid1.resize(m);
    g.log_upper0.resize(m);
    g.log_upper1.resize(m);
    for (int r = 1; r <= m; ++r) {
        g.log_mid0[r - 1] = std::log(g.mid0(r));
        g.log_mid1[r - 1] = std::log(g.mid1(r));
        g.log_upper0[r - 1] = std::log(g.upper0(r));
        g.log_upper1[r - 1] = std::log(g.upper1(r));
    }
    return g;
}

double cell_mass_midpoint(const ComponentParams &p, const Grid &g, int r, int s) {
    check_indices(g, r, s);
    return g.s0 * g.s1 * biv_lognormal_pdf(g.mid0(r), g.mid1(s), p);
}

bool is_edge_cell(const ComponentParams &p, const Grid &g, int r, int s) {
    check_indices(g, r, s);
    if (r == 1 && p.mu0 < g.log_mid0[0]) return true;
    if (s == 1 && p.mu1 < g.log_mid1[0]) return true;
    return false;
}

double cell_mass_cdf(const ComponentParams &p, const Grid &g, int r, int s) {
    check_indices(g, r, s);
    const double u0 = g.upper0(r), l0 = g.lower0(r);
    const double u1 = g.upper1(s), l1 = g.lower1(s);
    double mass = biv_lognormal_cdf(u0, u1, p);
    if (l0 > 0.0) mass -= biv_lognormal_cdf(l0, u1, p);
    if (l1 > 0.0) mass -= biv_lognormal_cdf(u0, l1, p);
    if (l0 > 0.0 && l1 > 0.0) mass += biv_lognormal_cdf(l0, l1, p);
    return mass < 0.0 ? 0.0 : mass;
}

}  // namespace bideconv
