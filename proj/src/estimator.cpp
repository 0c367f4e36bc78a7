#include "bideconv/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bideconv/accum.hpp"
#include "bideconv/errors.hpp"
#include "bideconv/parallel.hpp"
#include "bideconv/scalar_search.hpp"

namespace bideconv {

namespace {

// Internal search geometry. Brackets are fixed per invocation; windows
// for mu and tau move with the current value between sweeps.
constexpr double kPiHi = 0.999;
constexpr double kRhoCap = 0.999;
constexpr double kMuRadius = 2.0;
constexpr double kTauPad = 2.0;
constexpr double kTauMin = 1e-4;
constexpr int kMaxCycles = 2;
constexpr double kConvergenceTol = 1e-3;
constexpr double kRhoClampFlag = 0.9985;

}  // namespace

RhoMode parse_rho_mode(const std::string &s) {
    if (s == "separate") return RhoMode::separate;
    if (s == "shared") return RhoMode::shared;
    if (s == "zero") return RhoMode::zero;
    throw std::invalid_argument("unknown rho mode '" + s + "' (separate|shared|zero)");
}

std::string to_string(RhoMode mode) {
    switch (mode) {
        case RhoMode::separate: return "separate";
        case RhoMode::shared: return "shared";
        case RhoMode::zero: return "zero";
    }
    return "?";
}

void validate(const FitConfig &cfg) {
    if (cfg.m < 2) throw std::invalid_argument("FitConfig: m must be >= 2");
    if (cfg.iterations < 1) throw std::invalid_argument("FitConfig: iterations must be >= 1");
    if (!(cfg.scalar_tol > 0.0)) throw std::invalid_argument("FitConfig: scalar_tol must be > 0");
    if (!(cfg.pi_eps > 0.0 && cfg.pi_eps < 0.5))
        throw std::invalid_argument("FitConfig: pi_eps must lie in (0, 0.5)");
}

std::vector<FeatureTheta> init_theta(const std::vector<std::string> &features,
                                     const ReferenceProfile &ref_tumour,
                                     const ReferenceProfile &ref_background,
                                     double rho_init) {
    auto index_of = [](const ReferenceProfile &ref) {
        std::unordered_map<std::string, std::size_t> idx;
        idx.reserve(ref.feature_id.size());
        for (std::size_t k = 0; k < ref.feature_id.size(); ++k) idx[ref.feature_id[k]] = k;
        return idx;
    };
    const auto t_idx = index_of(ref_tumour);
    const auto b_idx = index_of(ref_background);

    std::vector<std::string> missing;
    for (const auto &f : features) {
        if (!t_idx.count(f) || !b_idx.count(f)) missing.push_back(f);
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "init_theta: " << missing.size() << " feature(s) missing from a reference:";
        for (std::size_t k = 0; k < missing.size() && k < 10; ++k) msg << " " << missing[k];
        if (missing.size() > 10) msg << " ...";
        throw std::invalid_argument(msg.str());
    }

    std::vector<FeatureTheta> theta;
    theta.reserve(features.size());
    for (const auto &f : features) {
        const std::size_t kt = t_idx.at(f);
        const std::size_t kb = b_idx.at(f);
        FeatureTheta th;
        th.tumour.mu0 = th.tumour.mu1 = ref_tumour.log_mean[kt];
        th.tumour.tau0 = th.tumour.tau1 = ref_tumour.log_var[kt];
        th.background.mu0 = th.background.mu1 = ref_background.log_mean[kb];
        th.background.tau0 = th.background.tau1 = ref_background.log_var[kb];
        th.tumour.rho = th.background.rho = rho_init;
        validate(th, "init_theta(" + f + ")");
        theta.push_back(th);
    }
    return theta;
}

namespace {

double patient_objective(const GriddedData &gd, std::size_t i, const TumourFractions &f,
                         const std::vector<FeatureTheta> &theta, double pi_eps,
                         LikWorkspace &ws) {
    const std::size_t p = gd.data->n_features();
    NeumaierSum s;
    for (std::size_t j = 0; j < p; ++j)
        s.add(pair_loglik(gd.grid(i, j), f, theta[j], CellRule::hybrid, pi_eps, ws));
    return s.value();
}

double feature_objective(const GriddedData &gd, std::size_t j, const FeatureTheta &th,
                         const std::vector<TumourFractions> &pi, double pi_eps,
                         LikWorkspace &ws) {
    const std::size_t n = gd.data->n_patients();
    NeumaierSum s;
    for (std::size_t i = 0; i < n; ++i)
        s.add(pair_loglik(gd.grid(i, j), pi[i], th, CellRule::hybrid, pi_eps, ws));
    return s.value();
}

}  // namespace

void step_pi(const GriddedData &gd, const std::vector<FeatureTheta> &theta,
             std::vector<TumourFractions> &pi, const FitConfig &cfg,
             std::vector<std::uint8_t> *failed) {
    const std::size_t n = gd.data->n_patients();
    if (pi.size() != n || theta.size() != gd.data->n_features())
        throw std::invalid_argument("step_pi: dimension mismatch");
    if (failed) failed->assign(n, 0);

    parallel_for(n, cfg.threads, [&](std::size_t i) {
        thread_local LikWorkspace ws;
        auto obj = [&](const TumourFractions &f) {
            return patient_objective(gd, i, f, theta, cfg.pi_eps, ws);
        };
        TumourFractions cur = pi[i];
        try {
            double cur_val = obj(cur);
            for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
                const double start_val = cur_val;

                // pi0 with the ratio u = pi1/pi0 held fixed; the ordered
                // constraint is a box in (pi0, u).
                double u = cur.pi0 > 0.0 ? std::min(1.0, cur.pi1 / cur.pi0) : 0.0;
                auto r0 = maximize_scalar(
                    [&](double x) { return obj({x, u * x}); }, 0.0, kPiHi, cfg.scalar_tol);
                if (r0.fx > cur_val) {
                    cur = {r0.x, u * r0.x};
                    cur_val = r0.fx;
                }

                auto r1 = maximize_scalar(
                    [&](double x) { return obj({cur.pi0, x * cur.pi0}); }, 0.0, 1.0,
                    cfg.scalar_tol);
                if (r1.fx > cur_val) {
                    cur.pi1 = r1.x * cur.pi0;
                    cur_val = r1.fx;
                }

                if (cur_val - start_val < cfg.scalar_tol) break;
            }
            pi[i] = cur;
        } catch (const numerical_error &) {
            if (failed) (*failed)[i] = 1;  // previous value retained
        }
    });
}

void step_rho(const GriddedData &gd, const std::vector<TumourFractions> &pi,
              std::vector<FeatureTheta> &theta, const FitConfig &cfg) {
    if (cfg.rho_mode == RhoMode::zero) return;
    const std::size_t p = gd.data->n_features();
    if (theta.size() != p || pi.size() != gd.data->n_patients())
        throw std::invalid_argument("step_rho: dimension mismatch");

    parallel_for(p, cfg.threads, [&](std::size_t j) {
        thread_local LikWorkspace ws;
        FeatureTheta th = theta[j];
        auto obj = [&]() { return feature_objective(gd, j, th, pi, cfg.pi_eps, ws); };
        double cur_val = obj();

        auto search = [&](bool tumour_rho, bool both) {
            double keep_t = th.tumour.rho, keep_b = th.background.rho;
            auto res = maximize_scalar(
                [&](double x) {
                    if (both) {
                        th.tumour.rho = th.background.rho = x;
                    } else if (tumour_rho) {
                        th.tumour.rho = x;
                    } else {
                        th.background.rho = x;
                    }
                    const double v = obj();
                    th.tumour.rho = keep_t;
                    th.background.rho = keep_b;
                    return v;
                },
                -kRhoCap, kRhoCap, cfg.scalar_tol);
            if (res.fx > cur_val) {
                if (both) {
                    th.tumour.rho = th.background.rho = res.x;
                } else if (tumour_rho) {
                    th.tumour.rho = res.x;
                } else {
                    th.background.rho = res.x;
                }
                cur_val = res.fx;
            }
        };

        for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
            const double start_val = cur_val;
            if (cfg.rho_mode == RhoMode::shared) {
                search(false, true);
            } else {
                search(true, false);
                search(false, false);
            }
            if (cur_val - start_val < cfg.scalar_tol) break;
        }
        theta[j] = th;
    });
}

void step_mu_tau(const GriddedData &gd, const std::vector<TumourFractions> &pi,
                 std::vector<FeatureTheta> &theta, const FitConfig &cfg) {
    const std::size_t p = gd.data->n_features();
    if (theta.size() != p || pi.size() != gd.data->n_patients())
        throw std::invalid_argument("step_mu_tau: dimension mismatch");

    parallel_for(p, cfg.threads, [&](std::size_t j) {
        thread_local LikWorkspace ws;
        FeatureTheta th = theta[j];
        auto obj = [&]() { return feature_objective(gd, j, th, pi, cfg.pi_eps, ws); };
        double cur_val = obj();

        auto search = [&](double &slot, double lo, double hi) {
            const double keep = slot;
            auto res = maximize_scalar(
                [&](double x) {
                    slot = x;
                    const double v = obj();
                    slot = keep;
                    return v;
                },
                lo, hi, cfg.scalar_tol);
            if (res.fx > cur_val) {
                slot = res.x;
                cur_val = res.fx;
            }
        };

        for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
            const double start_val = cur_val;
            // Hypermethylation constraint: each mean's bracket is cut at
            // the other component's current mean on the same axis.
            search(th.tumour.mu0, std::max(th.tumour.mu0 - kMuRadius, th.background.mu0),
                   th.tumour.mu0 + kMuRadius);
            search(th.tumour.mu1, std::max(th.tumour.mu1 - kMuRadius, th.background.mu1),
                   th.tumour.mu1 + kMuRadius);
            search(th.tumour.tau0, kTauMin, th.tumour.tau0 + kTauPad);
            search(th.tumour.tau1, kTauMin, th.tumour.tau1 + kTauPad);
            search(th.background.mu0, th.background.mu0 - kMuRadius,
                   std::min(th.background.mu0 + kMuRadius, th.tumour.mu0));
            search(th.background.mu1, th.background.mu1 - kMuRadius,
                   std::min(th.background.mu1 + kMuRadius, th.tumour.mu1));
            search(th.background.tau0, kTauMin, th.background.tau0 + kTauPad);
            search(th.background.tau1, kTauMin, th.background.tau1 + kTauPad);
            if (cur_val - start_val < cfg.scalar_tol) break;
        }
        theta[j] = th;
    });
}

FitResult fit(const Dataset &data, const std::vector<FeatureTheta> &init,
              const FitConfig &cfg) {
    validate(cfg);
    if (init.size() != data.n_features())
        throw std::invalid_argument("fit: init theta size does not match feature count");
    for (std::size_t j = 0; j < init.size(); ++j)
        validate(init[j], "fit init theta[" + data.feature_ids[j] + "]");

    FitResult res;
    res.theta = init;
    if (cfg.rho_mode == RhoMode::zero) {
        for (auto &th : res.theta) th.tumour.rho = th.background.rho = 0.0;
    }
    res.pi.assign(data.n_patients(), TumourFractions{0.1, 0.01});

    const GriddedData gd = GriddedData::build(data, cfg.m);
    try {
        res.initial_loglik = total_loglik(gd, res.pi, res.theta, CellRule::hybrid, cfg.pi_eps);
    } catch (const numerical_error &e) {
        throw numerical_error(std::string("fit initialisation: ") + e.what());
    }
    if (!std::isfinite(res.initial_loglik))
        throw numerical_error("fit initialisation: non-finite total log-likelihood");

    double sweep_end_prev = res.initial_loglik;
    double sweep_end = res.initial_loglik;
    for (int it = 0; it < cfg.iterations; ++it) {
        step_pi(gd, res.theta, res.pi, cfg, &res.pi_step_failed);
        res.loglik_trace.push_back(total_loglik(gd, res.pi, res.theta, CellRule::hybrid, cfg.pi_eps));
        res.trace_labels.push_back("pi");

        if (cfg.rho_mode != RhoMode::zero) {
            step_rho(gd, res.pi, res.theta, cfg);
            res.loglik_trace.push_back(
                total_loglik(gd, res.pi, res.theta, CellRule::hybrid, cfg.pi_eps));
            res.trace_labels.push_back("rho");
        }

        step_mu_tau(gd, res.pi, res.theta, cfg);
        res.loglik_trace.push_back(
            total_loglik(gd, res.pi, res.theta, CellRule::hybrid, cfg.pi_eps));
        res.trace_labels.push_back("mu_tau");

        NeumaierSum mu_mean;
        for (const auto &th : res.theta) mu_mean.add(0.5 * (th.tumour.mu0 + th.tumour.mu1));
        res.mean_tumour_mu_trace.push_back(mu_mean.value() / double(res.theta.size()));

        sweep_end_prev = sweep_end;
        sweep_end = res.loglik_trace.back();
    }
    res.converged = std::fabs(sweep_end - sweep_end_prev) < kConvergenceTol;

    // Diagnostics at the optimum.
    res.feature_diag.assign(data.n_features(), FeatureDiagnostics{});
    thread_local LikWorkspace ws;
    for (std::size_t j = 0; j < data.n_features(); ++j) {
        auto &diag = res.feature_diag[j];
        if (cfg.rho_mode != RhoMode::zero) {
            diag.rho_clamped = std::fabs(res.theta[j].tumour.rho) >= kRhoClampFlag ||
                               std::fabs(res.theta[j].background.rho) >= kRhoClampFlag;
        }
        for (std::size_t i = 0; i < data.n_patients() && !diag.floored_loglik; ++i) {
            const double ll =
                pair_loglik(gd.grid(i, j), res.pi[i], res.theta[j], CellRule::hybrid,
                            cfg.pi_eps, ws);
            diag.floored_loglik = (ll == kLogLikFloor);
        }
    }
    return res;
}

}  // namespace bideconv
