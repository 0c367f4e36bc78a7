#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bideconv/likelihood.hpp"
#include "bideconv/types.hpp"

namespace bideconv {

// The three correlation specifications: separate rho per component,
// a single shared rho per feature, or rho fixed at zero (the univariate
// special case).
enum class RhoMode { separate, shared, zero };

RhoMode parse_rho_mode(const std::string &s);
std::string to_string(RhoMode mode);

struct FitConfig {
    int m = 8;                   // grid bins per axis
    int iterations = 10;         // outer block sweeps
    double scalar_tol = 1e-4;    // per-parameter search tolerance
    double pi_eps = 1e-6;        // degenerate-weight threshold
    RhoMode rho_mode = RhoMode::separate;
    std::uint64_t seed = 0;      // reserved for randomised initialisation
    int threads = 1;             // per-step parallelism (patients / features)
};

void validate(const FitConfig &cfg);

// Per-feature reference profile (log-scale mean and variance), the
// initialisation source for mu and tau.
struct ReferenceProfile {
    std::vector<std::string> feature_id;
    std::vector<double> log_mean;
    std::vector<double> log_var;
};

struct FeatureDiagnostics {
    bool rho_clamped = false;    // a correlation ended on the clamp boundary
    bool floored_loglik = false; // some pair hit the likelihood floor at the optimum
};

struct FitResult {
    std::vector<TumourFractions> pi;
    std::vector<FeatureTheta> theta;
    double initial_loglik = 0.0;
    std::vector<double> loglik_trace;        // one entry per completed block step
    std::vector<std::string> trace_labels;   // "pi", "rho" or "mu_tau" per entry
    std::vector<double> mean_tumour_mu_trace;  // per sweep, mean over features
    bool converged = false;
    std::vector<FeatureDiagnostics> feature_diag;
    std::vector<std::uint8_t> pi_step_failed;  // per patient: optimiser failure, value kept
};

// Builds per-feature initial parameters from the reference profiles:
// both measurements start at the reference values and both components
// get rho_init. Throws listing any feature missing from a reference.
std::vector<FeatureTheta> init_theta(const std::vector<std::string> &features,
                                     const ReferenceProfile &ref_tumour,
                                     const ReferenceProfile &ref_background,
                                     double rho_init);

// Block steps. Each maximises its block with the others held fixed and
// never decreases the objective: a coordinate move is only accepted when
// the searched value beats the incumbent.
void step_pi(const GriddedData &gd, const std::vector<FeatureTheta> &theta,
             std::vector<TumourFractions> &pi, const FitConfig &cfg,
             std::vector<std::uint8_t> *failed = nullptr);

void step_rho(const GriddedData &gd, const std::vector<TumourFractions> &pi,
              std::vector<FeatureTheta> &theta, const FitConfig &cfg);

void step_mu_tau(const GriddedData &gd, const std::vector<TumourFractions> &pi,
                 std::vector<FeatureTheta> &theta, const FitConfig &cfg);

// Block coordinate ascent: pi -> rho -> mu/tau per sweep, total
// log-likelihood recorded after every step.
FitResult fit(const Dataset &data, const std::vector<FeatureTheta> &init,
              const FitConfig &cfg);

}  // namespace bideconv
