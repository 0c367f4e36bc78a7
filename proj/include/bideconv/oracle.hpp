#pragma once

#include <cstdint>
#include <vector>

#include "bideconv/types.hpp"

namespace bideconv {

// Brute-force probability that the observed pair lands in the top-right
// grid cell, P(Y0 in C0_m, Y1 in C1_m) with Y = T + B, computed by
// adaptive 2-D quadrature: the tumour density integrated against the
// background's exact rectangle probability over the matching complement
// rectangle. Independent of the grid approximation; validation only,
// never on the optimisation path. Throws quadrature_error (carrying the
// last estimate and bound) if the refinement cap is hit.
double convolution_cell_prob(const PairedObservation &obs, const TumourFractions &pi,
                             const FeatureTheta &theta, int m, double rel_tol = 1e-4);

// Log wrapper with the same floor convention as pair_loglik.
double oracle_pair_loglik(const PairedObservation &obs, const TumourFractions &pi,
                          const FeatureTheta &theta, int m, double rel_tol = 1e-4);

// Monte Carlo cross-oracle: fraction of n_draws simulated T + B sums
// landing in the top-right cell, with its standard error.
struct McEstimate {
    double prob = 0.0;
    double se = 0.0;
};
McEstimate mc_convolution_cell_prob(const PairedObservation &obs, const TumourFractions &pi,
                                    const FeatureTheta &theta, int m, std::size_t n_draws,
                                    std::uint64_t seed);

// One configuration of the standard random battery used for accuracy
// comparisons between the grid likelihood and the oracle.
struct BatteryCase {
    PairedObservation obs;
    TumourFractions pi;
    FeatureTheta theta;
};

// Deterministic battery spanning pi1 in {1e-4, 1e-2, 0.1, 0.3}; the
// observation is itself drawn from the model so both components sit
// inside the grid.
std::vector<BatteryCase> make_battery(std::uint64_t seed, std::size_t size = 50);

}  // namespace bideconv
