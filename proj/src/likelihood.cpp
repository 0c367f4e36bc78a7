#include "bideconv/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "bideconv/accum.hpp"
#include "bideconv/errors.hpp"
#include "bideconv/normal.hpp"

namespace bideconv {

const double kLogLikFloor = std::log(1e-300);

void LikWorkspace::resize(int m) {
    const std::size_t mm = static_cast<std::size_t>(m) * m;
    t_mass.resize(mm);
    b_mass.resize(mm);
    z0.resize(m);
    z1.resize(m);
    a0.resize(m);
    a1.resize(m);
}

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
// exp() underflows to 0 below roughly -745; skip the call entirely.
constexpr double kExpUnderflow = -745.0;

// Full bivariate fill for a component active on both axes.
void bivariate_masses(const ComponentParams &p, const Grid &g, CellRule rule,
                      LikWorkspace &ws, double *out) {
    const int m = g.m;
    const double sd0 = std::sqrt(p.tau0);
    const double sd1 = std::sqrt(p.tau1);
    const double omr2 = 1.0 - p.rho * p.rho;
    const double cross = p.rho / omr2;
    const double half_inv = 0.5 / omr2;
    const double lead =
        std::log(g.s0 * g.s1) - kLog2Pi - 0.5 * std::log(p.tau0 * p.tau1 * omr2);

    for (int r = 0; r < m; ++r) {
        const double z = (g.log_mid0[r] - p.mu0) / sd0;
        ws.z0[r] = z;
        ws.a0[r] = -g.log_mid0[r] - half_inv * z * z;
    }
    for (int s = 0; s < m; ++s) {
        const double z = (g.log_mid1[s] - p.mu1) / sd1;
        ws.z1[s] = z;
        ws.a1[s] = -g.log_mid1[s] - half_inv * z * z;
    }
    for (int r = 0; r < m; ++r) {
        const double base = lead + ws.a0[r];
        const double zc = cross * ws.z0[r];
        double *row = out + static_cast<std::size_t>(r) * m;
        for (int s = 0; s < m; ++s) {
            const double e = base + ws.a1[s] + zc * ws.z1[s];
            row[s] = e < kExpUnderflow ? 0.0 : std::exp(e);
        }
    }

    if (rule != CellRule::hybrid) return;

    // Edge rows/columns: the criterion depends only on the axis, so it
    // flags the whole first row (or column). Consecutive cells share CDF
    // corners, so each line costs m bivariate CDF evaluations.
    const bool edge_row = p.mu0 < g.log_mid0[0];
    const bool edge_col = p.mu1 < g.log_mid1[0];
    if (edge_row) {
        const double a = (g.log_upper0[0] - p.mu0) / sd0;
        double prev = 0.0;
        for (int s = 0; s < m; ++s) {
            const double b = (g.log_upper1[s] - p.mu1) / sd1;
            const double cur = std_binorm_cdf(a, b, p.rho);
            out[s] = std::max(0.0, cur - prev);
            prev = cur;
        }
    }
    if (edge_col) {
        const double b = (g.log_upper1[0] - p.mu1) / sd1;
        double prev = 0.0;
        for (int r = 0; r < m; ++r) {
            const double a = (g.log_upper0[r] - p.mu0) / sd0;
            const double cur = std_binorm_cdf(a, b, p.rho);
            out[static_cast<std::size_t>(r) * m] = std::max(0.0, cur - prev);
            prev = cur;
        }
    }
}

// Exact univariate cell masses on one axis (normal CDF differences of
// the log bounds); used when the other axis has collapsed to zero.
void univariate_masses(double mu, double tau, const std::vector<double> &log_upper,
                       int m, std::size_t stride, double *out) {
    const double sd = std::sqrt(tau);
    double prev = 0.0;
    for (int r = 0; r < m; ++r) {
        const double cur = norm_cdf((log_upper[r] - mu) / sd);
        out[static_cast<std::size_t>(r) * stride] = std::max(0.0, cur - prev);
        prev = cur;
    }
}

}  // namespace

void weighted_component_masses(const ComponentParams &base, double pi0, double pi1,
                               bool tumour, const Grid &g, CellRule rule, double pi_eps,
                               LikWorkspace &ws, double *out) {
    const int m = g.m;
    const std::size_t mm = static_cast<std::size_t>(m) * m;

    // An axis is live when the component's weight there is not within
    // pi_eps of vanishing: weight = pi for the tumour, 1 - pi for the
    // background.
    const bool live0 = tumour ? (pi0 >= pi_eps) : (pi0 <= 1.0 - pi_eps);
    const bool live1 = tumour ? (pi1 >= pi_eps) : (pi1 <= 1.0 - pi_eps);

    if (live0 && live1) {
        const double d0 = tumour ? std::log(pi0) : std::log1p(-pi0);
        const double d1 = tumour ? std::log(pi1) : std::log1p(-pi1);
        bivariate_masses(shift_params(base, d0, d1), g, rule, ws, out);
        return;
    }

    // A vanished axis concentrates the component at 0, i.e. in the first
    // cell with probability 1; the live axis keeps its exact univariate
    // distribution. This is the analytic limit of the shifted density.
    std::fill(out, out + mm, 0.0);
    if (!live0 && !live1) {
        out[0] = 1.0;
    } else if (live0) {
        const double mu = base.mu0 + (tumour ? std::log(pi0) : std::log1p(-pi0));
        univariate_masses(mu, base.tau0, g.log_upper0, m, m, out);  // column s = 1
    } else {
        const double mu = base.mu1 + (tumour ? std::log(pi1) : std::log1p(-pi1));
        univariate_masses(mu, base.tau1, g.log_upper1, m, 1, out);  // row r = 1
    }
}

double pair_loglik(const Grid &g, const TumourFractions &pi, const FeatureTheta &theta,
                   CellRule rule, double pi_eps, LikWorkspace &ws) {
    if (g.m < 2) throw std::invalid_argument("pair_loglik: m must be >= 2");
    if (!(pi.pi0 >= 0.0 && pi.pi0 <= 1.0) || !(pi.pi1 >= 0.0 && pi.pi1 <= 1.0))
        throw std::invalid_argument("pair_loglik: mixing weights must lie in [0, 1]");

    const int m = g.m;
    const std::size_t mm = static_cast<std::size_t>(m) * m;
    ws.resize(m);

    weighted_component_masses(theta.tumour, pi.pi0, pi.pi1, true, g, rule, pi_eps, ws,
                              ws.t_mass.data());
    weighted_component_masses(theta.background, pi.pi0, pi.pi1, false, g, rule, pi_eps, ws,
                              ws.b_mass.data());

    // sum_{r,s} T(r,s) * B(m+1-r, m+1-s). In flat indexing the partner of
    // k is mm-1-k; accumulating the symmetric pairs keeps the value
    // bit-identical under the tumour/background label swap.
    const double *tm = ws.t_mass.data();
    const double *bm = ws.b_mass.data();
    NeumaierSum acc;
    for (std::size_t k = 0; k < mm / 2; ++k) {
        const std::size_t kp = mm - 1 - k;
        acc.add(tm[k] * bm[kp] + tm[kp] * bm[k]);
    }
    if (mm % 2 != 0) {
        const std::size_t k = mm / 2;
        acc.add(tm[k] * bm[k]);
    }
    const double sum = acc.value();

    if (std::isnan(sum)) throw numerical_error("pair_loglik: convolution sum is NaN");
    if (!(sum > 1e-300)) return kLogLikFloor;
    return std::log(sum);
}

double pair_loglik(const PairedObservation &obs, const TumourFractions &pi,
                   const FeatureTheta &theta, int m, CellRule rule, double pi_eps) {
    thread_local LikWorkspace ws;
    const Grid g = build_grid(obs, m);
    return pair_loglik(g, pi, theta, rule, pi_eps, ws);
}

GriddedData GriddedData::build(const Dataset &d, int m) {
    if (m < 2) throw std::invalid_argument("GriddedData: m must be >= 2");
    GriddedData gd;
    gd.data = &d;
    gd.m = m;
    gd.grids.reserve(d.n_patients() * d.n_features());
    for (std::size_t i = 0; i < d.n_patients(); ++i)
        for (std::size_t j = 0; j < d.n_features(); ++j)
            gd.grids.push_back(build_grid(d.obs(i, j), m));
    return gd;
}

double total_loglik(const GriddedData &gd, const std::vector<TumourFractions> &pi,
                    const std::vector<FeatureTheta> &theta, CellRule rule, double pi_eps) {
    const Dataset &d = *gd.data;
    const std::size_t n = d.n_patients();
    const std::size_t p = d.n_features();
    if (pi.size() != n || theta.size() != p)
        throw std::invalid_argument("total_loglik: dimension mismatch");

    thread_local LikWorkspace ws;
    NeumaierSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            try {
                acc.add(pair_loglik(gd.grid(i, j), pi[i], theta[j], rule, pi_eps, ws));
            } catch (const numerical_error &e) {
                throw numerical_error(std::string(e.what()) + " at patient " +
                                      d.patient_ids[i] + " (i=" + std::to_string(i) +
                                      "), feature " + d.feature_ids[j] +
                                      " (j=" + std::to_string(j) + ")");
            }
        }
    }
    return acc.value();
}

double total_loglik(const Dataset &d, const std::vector<TumourFractions> &pi,
                    const std::vector<FeatureTheta> &theta, int m, CellRule rule,
                    double pi_eps) {
    return total_loglik(GriddedData::build(d, m), pi, theta, rule, pi_eps);
}

std::size_t apply_pseudocount(Dataset &d, double pseudo_count) {
    if (!(pseudo_count > 0.0))
        throw std::invalid_argument("apply_pseudocount: pseudo-count must be > 0");
    std::size_t replaced = 0;
    for (auto *col : {&d.y0, &d.y1}) {
        for (double &v : *col) {
            if (v == 0.0) {
                v = pseudo_count;
                ++replaced;
            }
        }
    }
    return replaced;
}

}  // namespace bideconv
