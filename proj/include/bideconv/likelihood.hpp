#pragma once

#include <vector>

#include "bideconv/dataset.hpp"
#include "bideconv/grid.hpp"
#include "bideconv/types.hpp"

namespace bideconv {

// How cell probabilities are evaluated. hybrid is the production rule:
// midpoint everywhere except the first-row/column cells flagged by
// is_edge_cell, which get exact CDF rectangles. midpoint_only exists for
// the accuracy comparisons.
enum class CellRule { hybrid, midpoint_only };

// log(1e-300): returned instead of -inf when the convolution sum
// underflows, so ascent stays well-defined.
extern const double kLogLikFloor;

// Scratch buffers reused across likelihood evaluations; one per thread.
struct LikWorkspace {
    std::vector<double> t_mass, b_mass;      // m*m cell masses per component
    std::vector<double> z0, z1, a0, a1;      // per-axis precomputation
    void resize(int m);
};

// Cell masses of one weighted component over the whole grid, row-major
// [r-1][s-1]. The mixing weight is folded in here: the tumour component
// is shifted by log(pi), the background by log(1 - pi), per axis. A
// weight within pi_eps of the component's vanishing point (0 for tumour,
// 1 for background) collapses that axis onto the first cell: the limit
// is taken analytically with exact univariate masses on the live axis.
void weighted_component_masses(const ComponentParams &base, double pi0, double pi1,
                               bool tumour, const Grid &g, CellRule rule, double pi_eps,
                               LikWorkspace &ws, double *out);

// Discrete convolution log-likelihood of a single observation pair: the
// log of sum_{r,s} P(T in C_r x C_s) * P(B in C_{m+1-r} x C_{m+1-s}).
// The summation order is invariant under the tumour/background label
// swap, so that symmetry holds bit-exactly. Cell masses are
// probabilities, not densities; the S0*S1 Jacobian is constant in the
// parameters given the data, so the argmax is unchanged.
double pair_loglik(const Grid &g, const TumourFractions &pi, const FeatureTheta &theta,
                   CellRule rule, double pi_eps, LikWorkspace &ws);

// Convenience form building the grid on the fly.
double pair_loglik(const PairedObservation &obs, const TumourFractions &pi,
                   const FeatureTheta &theta, int m, CellRule rule = CellRule::hybrid,
                   double pi_eps = 1e-6);

// A dataset with all its grids built once; likelihood evaluation during
// estimation never recomputes the (data-only) log tables.
struct GriddedData {
    const Dataset *data = nullptr;
    int m = 0;
    std::vector<Grid> grids;  // n*p, index i*p + j

    static GriddedData build(const Dataset &d, int m);
    const Grid &grid(std::size_t i, std::size_t j) const {
        return grids[i * data->n_features() + j];
    }
};

// Sum of pair_loglik over all (i, j) in fixed patient-major index order
// with compensated accumulation; bit-identical for identical inputs.
double total_loglik(const GriddedData &gd, const std::vector<TumourFractions> &pi,
                    const std::vector<FeatureTheta> &theta, CellRule rule = CellRule::hybrid,
                    double pi_eps = 1e-6);

double total_loglik(const Dataset &d, const std::vector<TumourFractions> &pi,
                    const std::vector<FeatureTheta> &theta, int m,
                    CellRule rule = CellRule::hybrid, double pi_eps = 1e-6);

}  // namespace bideconv
