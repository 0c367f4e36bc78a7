#include "bideconv/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "bideconv/rng.hpp"

namespace bideconv {

namespace {

std::string padded_id(const char *prefix, std::size_t k, std::size_t width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, static_cast<int>(width), k + 1);
    return buf;
}

void draw_component_pair(Rng &rng, const ComponentParams &p, double &x0, double &x1) {
    const double z0 = rng.normal();
    const double z1 = rng.normal();
    x0 = std::exp(p.mu0 + std::sqrt(p.tau0) * z0);
    x1 = std::exp(p.mu1 +
                  std::sqrt(p.tau1) * (p.rho * z0 + std::sqrt(1.0 - p.rho * p.rho) * z1));
}

}  // namespace

void validate(const SimConfig &cfg) {
    if (cfg.n_patients < 1 || cfg.n_features < 1)
        throw std::invalid_argument("SimConfig: need at least one patient and feature");
    if (!(cfg.noise_sd >= 0.0)) throw std::invalid_argument("SimConfig: noise_sd must be >= 0");
    auto range_ok = [](double lo, double hi) { return lo > -1.0 && hi <= 1.0 && lo <= hi; };
    if (!range_ok(cfg.rho_t_lo, cfg.rho_t_hi) || !range_ok(cfg.rho_b_lo, cfg.rho_b_hi))
        throw std::invalid_argument("SimConfig: rho ranges must lie within (-1, 1]");
    if (!(cfg.zero_fraction_post >= 0.0 && cfg.zero_fraction_post <= 1.0))
        throw std::invalid_argument("SimConfig: zero_fraction_post must lie in [0, 1]");
    if (!(cfg.pi0_beta_a > 0.0 && cfg.pi0_beta_b > 0.0))
        throw std::invalid_argument("SimConfig: Beta parameters must be > 0");
    if (!(cfg.tau_lo > 0.0 && cfg.tau_hi >= cfg.tau_lo))
        throw std::invalid_argument("SimConfig: tau range must be positive");
    if (!(cfg.post_ratio_hi >= 0.0 && cfg.post_ratio_hi <= 1.0))
        throw std::invalid_argument("SimConfig: post_ratio_hi must lie in [0, 1]");
}

SimTruth sample_truth(const SimConfig &cfg, const std::optional<SimParamSource> &reference) {
    validate(cfg);
    SimTruth truth;
    const std::size_t n = cfg.n_patients;
    const std::size_t p = cfg.n_features;

    truth.feature_ids.reserve(p);
    for (std::size_t j = 0; j < p; ++j) truth.feature_ids.push_back(padded_id("F", j, 4));
    truth.patient_ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) truth.patient_ids.push_back(padded_id("P", i, 4));

    // Uniform draw inside a rho range; degenerate ranges give the point.
    auto draw_rho = [](Rng &rng, double lo, double hi) {
        if (lo == hi) return lo;
        return std::min(rng.uniform(lo, hi), 0.9999);
    };

    truth.theta.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        Rng rng = Rng::substream(cfg.seed, "truth-feature", j);
        double mu_t, tau_t, mu_b, tau_b;
        if (reference) {
            const auto &rt = reference->tumour;
            const auto &rb = reference->background;
            if (rt.feature_id.empty() || rb.feature_id.empty())
                throw std::invalid_argument("sample_truth: empty reference profile");
            int tries = 0;
            do {
                const std::size_t kt = rng.below(rt.feature_id.size());
                const std::size_t kb = rng.below(rb.feature_id.size());
                mu_t = rt.log_mean[kt];
                tau_t = rt.log_var[kt];
                mu_b = rb.log_mean[kb];
                tau_b = rb.log_var[kb];
            } while (mu_t < mu_b + cfg.min_mu_separation && ++tries < 200);
            if (mu_t < mu_b + cfg.min_mu_separation) mu_t = mu_b + cfg.min_mu_separation;
        } else {
            int tries = 0;
            do {
                mu_t = rng.normal(cfg.tumour_mu_mean, cfg.tumour_mu_sd);
                mu_b = rng.normal(cfg.background_mu_mean, cfg.background_mu_sd);
            } while (mu_t < mu_b + cfg.min_mu_separation && ++tries < 200);
            if (mu_t < mu_b + cfg.min_mu_separation) mu_t = mu_b + cfg.min_mu_separation;
            tau_t = rng.uniform(cfg.tau_lo, cfg.tau_hi);
            tau_b = rng.uniform(cfg.tau_lo, cfg.tau_hi);
        }

        FeatureTheta th;
        th.tumour.mu0 = th.tumour.mu1 = mu_t;          // tumour kept equal across measurements
        th.tumour.tau0 = th.tumour.tau1 = tau_t;
        th.background.mu0 = mu_b;                      // background drifts between measurements
        th.background.mu1 = mu_b + rng.normal(0.0, cfg.background_shift_sd);
        th.background.tau0 = tau_b;
        th.background.tau1 = tau_b * std::exp(rng.normal(0.0, cfg.background_shift_sd));
        th.tumour.rho = draw_rho(rng, cfg.rho_t_lo, cfg.rho_t_hi);
        th.background.rho = draw_rho(rng, cfg.rho_b_lo, cfg.rho_b_hi);
        if (th.tumour.mu1 <= th.background.mu1)
            th.background.mu1 = th.tumour.mu1 - cfg.min_mu_separation;
        validate(th, "sample_truth feature " + truth.feature_ids[j]);
        truth.theta.push_back(th);
    }

    truth.pi.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = Rng::substream(cfg.seed, "truth-patient", i);
        TumourFractions f;
        f.pi0 = std::min(rng.beta(cfg.pi0_beta_a, cfg.pi0_beta_b), cfg.pi0_cap);
        f.pi1 = rng.uniform(0.0, cfg.post_ratio_hi) * f.pi0;
        truth.pi.push_back(f);
    }

    // Exactly round(zero_fraction_post * n) patients get pi1 = 0, chosen
    // by a seeded shuffle.
    const std::size_t n_zero =
        static_cast<std::size_t>(std::llround(cfg.zero_fraction_post * double(n)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = Rng::substream(cfg.seed, "truth-zeros");
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t k = shuffle_rng.below(i);
        std::swap(order[i - 1], order[k]);
    }
    for (std::size_t k = 0; k < n_zero && k < n; ++k) truth.pi[order[k]].pi1 = 0.0;

    for (const auto &f : truth.pi) validate(f, "sample_truth pi");
    return truth;
}

Dataset simulate_dataset(const SimTruth &truth, double noise_sd, std::uint64_t seed) {
    if (!(noise_sd >= 0.0)) throw std::invalid_argument("simulate_dataset: noise_sd < 0");
    const std::size_t n = truth.pi.size();
    const std::size_t p = truth.theta.size();

    Dataset out = Dataset::zeros(truth.patient_ids, truth.feature_ids);
    for (std::size_t j = 0; j < p; ++j) {
        Rng rng = Rng::substream(seed, "sim-feature", j);
        const FeatureTheta &th = truth.theta[j];
        for (std::size_t i = 0; i < n; ++i) {
            double t0, t1, b0, b1;
            draw_component_pair(rng, th.tumour, t0, t1);
            draw_component_pair(rng, th.background, b0, b1);
            const double eps0 = rng.normal() * noise_sd;
            const double eps1 = rng.normal() * noise_sd;
            const double pi0 = truth.pi[i].pi0;
            const double pi1 = truth.pi[i].pi1;
            const double y0 = std::exp(std::log(pi0 * t0 + (1.0 - pi0) * b0) + eps0);
            const double y1 = std::exp(std::log(pi1 * t1 + (1.0 - pi1) * b1) + eps1);
            out.set(i, j, y0, y1);
        }
    }
    return out;
}

SimParamSource reference_from_truth(const SimTruth &truth) {
    SimParamSource src;
    src.tumour.feature_id = truth.feature_ids;
    src.background.feature_id = truth.feature_ids;
    for (const auto &th : truth.theta) {
        src.tumour.log_mean.push_back(th.tumour.mu0);
        src.tumour.log_var.push_back(th.tumour.tau0);
        src.background.log_mean.push_back(th.background.mu0);
        src.background.log_var.push_back(th.background.tau0);
    }
    return src;
}

}  // namespace bideconv
