#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bideconv {

// Log-scale parameters of one bivariate log-normal component (tumour or
// background) for a single feature. The two axes are the pre- (0) and
// post-surgery (1) measurements. The covariance is never stored; rho is
// the canonical parameter.
struct ComponentParams {
    double mu0 = 0.0;   // log-scale mean, pre-surgery
    double mu1 = 0.0;   // log-scale mean, post-surgery
    double tau0 = 1.0;  // log-scale variance, pre, > 0
    double tau1 = 1.0;  // log-scale variance, post, > 0
    double rho = 0.0;   // cross-measurement correlation, |rho| < 1
};

inline void validate(const ComponentParams &p, const std::string &what = "ComponentParams") {
    if (!(std::isfinite(p.mu0) && std::isfinite(p.mu1)))
        throw std::invalid_argument(what + ": non-finite mean");
    if (!(p.tau0 > 0.0) || !(p.tau1 > 0.0))
        throw std::invalid_argument(what + ": variances must be > 0");
    if (!(std::fabs(p.rho) < 1.0))
        throw std::invalid_argument(what + ": |rho| must be < 1");
}

// Both latent components of one feature.
struct FeatureTheta {
    ComponentParams tumour;
    ComponentParams background;
};

// Checks the hypermethylated-region constraint in addition to the
// per-component ones. Estimation keeps this true after every step.
inline void validate(const FeatureTheta &t, const std::string &what = "FeatureTheta") {
    validate(t.tumour, what + ".tumour");
    validate(t.background, what + ".background");
    if (!(t.tumour.mu0 > t.background.mu0) || !(t.tumour.mu1 > t.background.mu1))
        throw std::invalid_argument(what + ": tumour log-mean must exceed background on both axes");
}

// Per-patient mixing weights. pi1 <= pi0: the post-surgery tumour
// fraction can be at most the pre-surgery one.
struct TumourFractions {
    double pi0 = 0.0;
    double pi1 = 0.0;
};

inline void validate(const TumourFractions &f, const std::string &what = "TumourFractions") {
    if (!(f.pi0 >= 0.0 && f.pi0 < 1.0) || !(f.pi1 >= 0.0 && f.pi1 < 1.0))
        throw std::invalid_argument(what + ": fractions must lie in [0, 1)");
    if (!(f.pi1 <= f.pi0))
        throw std::invalid_argument(what + ": pi1 must not exceed pi0");
}

// One (pre, post) normalised count pair: one feature of one patient.
struct PairedObservation {
    double y0 = 0.0;
    double y1 = 0.0;
};

inline void validate(const PairedObservation &o, const std::string &what = "PairedObservation") {
    if (!(std::isfinite(o.y0) && std::isfinite(o.y1)) || o.y0 < 0.0 || o.y1 < 0.0)
        throw std::invalid_argument(what + ": counts must be finite and >= 0");
}

// Translates the log-scale means; used to fold a mixing weight into a
// component: delta = log(pi) for the tumour, log(1 - pi) for the
// background. Variances and rho are untouched.
inline ComponentParams shift_params(const ComponentParams &p, double delta0, double delta1) {
    if (!std::isfinite(delta0) || !std::isfinite(delta1))
        throw std::invalid_argument("shift_params: non-finite shift");
    ComponentParams out = p;
    out.mu0 += delta0;
    out.mu1 += delta1;
    return out;
}

}  // namespace bideconv
