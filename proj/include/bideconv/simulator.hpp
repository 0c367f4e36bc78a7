#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bideconv/dataset.hpp"
#include "bideconv/estimator.hpp"
#include "bideconv/types.hpp"

namespace bideconv {

// Synthetic-data protocol: per-feature bivariate log-normal components
// with tumour means kept equal across measurements and background
// parameters perturbed between them; correlations drawn uniformly from
// per-component ranges; per-patient fractions with the ordered
// constraint and a configurable share of post-surgery zeros.
struct SimConfig {
    int n_patients = 100;
    int n_features = 600;
    double noise_sd = 0.1;  // sd of the log-scale noise terms

    double rho_t_lo = 0.9, rho_t_hi = 1.0;
    double rho_b_lo = 0.5, rho_b_hi = 1.0;

    double zero_fraction_post = 0.5;  // share of patients with pi1 = 0
    std::uint64_t seed = 1;

    // pi0 prior: Beta(a, b), a documented stand-in for the observed
    // pre-surgery ctDNA level distribution; pi1 = d * pi0, d ~ U(0, hi).
    double pi0_beta_a = 2.0, pi0_beta_b = 8.0;
    double pi0_cap = 0.9;
    double post_ratio_hi = 0.5;

    // Cross-measurement perturbation of the background (log scale).
    double background_shift_sd = 0.1;

    // Parametric (mu, tau) sampler, used when no reference profiles are
    // supplied; also stand-ins.
    double tumour_mu_mean = 3.3, tumour_mu_sd = 0.5;
    double background_mu_mean = 1.5, background_mu_sd = 0.5;
    double tau_lo = 0.3, tau_hi = 1.0;
    double min_mu_separation = 0.5;
};

void validate(const SimConfig &cfg);

struct SimTruth {
    std::vector<FeatureTheta> theta;    // per feature
    std::vector<TumourFractions> pi;    // per patient
    std::vector<std::string> feature_ids;
    std::vector<std::string> patient_ids;
};

// Optional bootstrap source for (mu, tau): rows are drawn uniformly from
// the profiles instead of the parametric sampler.
struct SimParamSource {
    ReferenceProfile tumour;
    ReferenceProfile background;
};

SimTruth sample_truth(const SimConfig &cfg,
                      const std::optional<SimParamSource> &reference = std::nullopt);

// log y = log(pi*T + (1-pi)*B) + eps per measurement, eps ~ N(0, sd^2);
// T, B drawn from the unshifted components. Bit-identical for a given
// seed: each feature uses its own counter-derived substream.
Dataset simulate_dataset(const SimTruth &truth, double noise_sd, std::uint64_t seed);

// Reference profiles matching how initialisation data would be produced
// upstream: the measurement-0 log means/variances of the truth.
SimParamSource reference_from_truth(const SimTruth &truth);

}  // namespace bideconv
