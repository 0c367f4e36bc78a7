#include "bideconv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bideconv/bivariate_lognormal.hpp"
#include "bideconv/errors.hpp"
#include "bideconv/likelihood.hpp"
#include "bideconv/normal.hpp"
#include "bideconv/quad2d.hpp"
#include "bideconv/rng.hpp"

namespace bideconv {

namespace {

constexpr double kTailQuantile = 1e-8;
constexpr std::size_t kMaxRegions = 40000;

// P(lo <= X <= hi) for X log-normal(mu, tau); bounds clipped at 0.
double lognorm_rect_uni(double mu, double tau, double lo, double hi) {
    if (hi <= 0.0) return 0.0;
    const double sd = std::sqrt(tau);
    const double upper = norm_cdf((std::log(hi) - mu) / sd);
    const double lower = lo > 0.0 ? norm_cdf((std::log(lo) - mu) / sd) : 0.0;
    return std::max(0.0, upper - lower);
}

double lognorm_rect_biv(const ComponentParams &p, double lo0, double hi0, double lo1,
                        double hi1) {
    if (hi0 <= 0.0 || hi1 <= 0.0) return 0.0;
    lo0 = std::max(lo0, 0.0);
    lo1 = std::max(lo1, 0.0);
    double mass = biv_lognormal_cdf(hi0, hi1, p);
    if (lo0 > 0.0) mass -= biv_lognormal_cdf(lo0, hi1, p);
    if (lo1 > 0.0) mass -= biv_lognormal_cdf(hi0, lo1, p);
    if (lo0 > 0.0 && lo1 > 0.0) mass += biv_lognormal_cdf(lo0, lo1, p);
    return std::max(0.0, mass);
}

double lognorm_pdf_uni(double x, double mu, double tau) {
    if (!(x > 0.0)) return 0.0;
    const double lx = std::log(x);
    const double z = (lx - mu) / std::sqrt(tau);
    static const double log_sqrt_2pi = 0.9189385332046727418;
    return std::exp(-0.5 * z * z - lx - 0.5 * std::log(tau) - log_sqrt_2pi);
}

struct TailBox {
    double lo, hi;
    bool empty;
};

TailBox tail_box(double mu, double tau, double cap) {
    const double sd = std::sqrt(tau);
    const double z = norm_quantile(kTailQuantile);
    TailBox box{std::exp(mu + sd * z), std::min(cap, std::exp(mu - sd * z)), false};
    box.empty = !(box.lo < box.hi);
    return box;
}

double run_quad(const std::function<double(double, double)> &f, double x_lo, double x_hi,
                double y_lo, double y_hi, double rel_tol) {
    const Quad2dResult q = integrate2d(f, x_lo, x_hi, y_lo, y_hi, rel_tol, 1e-16, kMaxRegions);
    if (!q.converged)
        throw quadrature_error("convolution_cell_prob: quadrature did not converge", q.value,
                               q.error);
    return q.value;
}

}  // namespace

double convolution_cell_prob(const PairedObservation &obs, const TumourFractions &pi,
                             const FeatureTheta &theta, int m, double rel_tol) {
    if (m < 2) throw std::invalid_argument("convolution_cell_prob: m must be >= 2");
    if (!(obs.y0 > 0.0) || !(obs.y1 > 0.0))
        throw std::invalid_argument("convolution_cell_prob: counts must be > 0");
    if (!(pi.pi0 >= 0.0 && pi.pi0 <= 1.0) || !(pi.pi1 >= 0.0 && pi.pi1 <= 1.0))
        throw std::invalid_argument("convolution_cell_prob: weights must lie in [0, 1]");

    // Top-right cell bounds.
    const double a0 = (m - 1) * obs.y0 / m, b0 = obs.y0;
    const double a1 = (m - 1) * obs.y1 / m, b1 = obs.y1;

    // A component is absent on an axis when its weight is exactly at the
    // vanishing point; the convolution then degenerates there.
    const bool tl0 = pi.pi0 > 0.0, tl1 = pi.pi1 > 0.0;
    const bool bl0 = pi.pi0 < 1.0, bl1 = pi.pi1 < 1.0;

    ComponentParams tum = theta.tumour;
    if (tl0) tum.mu0 += std::log(pi.pi0);
    if (tl1) tum.mu1 += std::log(pi.pi1);
    ComponentParams bkg = theta.background;
    if (bl0) bkg.mu0 += std::log1p(-pi.pi0);
    if (bl1) bkg.mu1 += std::log1p(-pi.pi1);

    // Background factor given the tumour's position (t0, t1); dead
    // tumour axes contribute t = 0.
    auto b_factor = [&](double t0, double t1) {
        if (bl0 && bl1) return lognorm_rect_biv(bkg, a0 - t0, b0 - t0, a1 - t1, b1 - t1);
        if (bl0) return lognorm_rect_uni(bkg.mu0, bkg.tau0, a0 - t0, b0 - t0);
        if (bl1) return lognorm_rect_uni(bkg.mu1, bkg.tau1, a1 - t1, b1 - t1);
        return 1.0;
    };

    if (!tl0 && !tl1) return b_factor(0.0, 0.0);

    // Where a background axis is absent, the tumour alone must land in
    // the cell on that axis: fold the constraint into the t domain.
    if (tl0 && tl1) {
        TailBox box0 = tail_box(tum.mu0, tum.tau0, b0);
        TailBox box1 = tail_box(tum.mu1, tum.tau1, b1);
        if (!bl0) box0.lo = std::max(box0.lo, a0);
        if (!bl1) box1.lo = std::max(box1.lo, a1);
        if (!(box0.lo < box0.hi) || !(box1.lo < box1.hi)) return 0.0;  // tail mass < 1e-8
        return run_quad(
            [&](double t0, double t1) {
                return biv_lognormal_pdf(t0, t1, tum) * b_factor(t0, t1);
            },
            box0.lo, box0.hi, box1.lo, box1.hi, rel_tol);
    }

    // One live tumour axis: a 1-D integral, run through the 2-D engine
    // with a dummy unit axis (the oracle stays one code path; this is
    // off the hot path by design).
    const bool live_axis0 = tl0;
    const double mu = live_axis0 ? tum.mu0 : tum.mu1;
    const double tau = live_axis0 ? tum.tau0 : tum.tau1;
    const double cell_a = live_axis0 ? a0 : a1;
    const double cell_b = live_axis0 ? b0 : b1;
    const bool b_live_here = live_axis0 ? bl0 : bl1;

    TailBox box = tail_box(mu, tau, cell_b);
    if (!b_live_here) box.lo = std::max(box.lo, cell_a);
    if (!(box.lo < box.hi)) return 0.0;
    return run_quad(
        [&](double t, double) {
            const double t0 = live_axis0 ? t : 0.0;
            const double t1 = live_axis0 ? 0.0 : t;
            return lognorm_pdf_uni(t, mu, tau) * b_factor(t0, t1);
        },
        box.lo, box.hi, 0.0, 1.0, rel_tol);
}

double oracle_pair_loglik(const PairedObservation &obs, const TumourFractions &pi,
                          const FeatureTheta &theta, int m, double rel_tol) {
    const double prob = convolution_cell_prob(obs, pi, theta, m, rel_tol);
    if (!(prob > 1e-300)) return kLogLikFloor;
    return std::log(prob);
}

McEstimate mc_convolution_cell_prob(const PairedObservation &obs, const TumourFractions &pi,
                                    const FeatureTheta &theta, int m, std::size_t n_draws,
                                    std::uint64_t seed) {
    if (n_draws == 0) throw std::invalid_argument("mc_convolution_cell_prob: need draws");
    const double a0 = (m - 1) * obs.y0 / m, b0 = obs.y0;
    const double a1 = (m - 1) * obs.y1 / m, b1 = obs.y1;

    Rng rng = Rng::substream(seed, "mc-oracle");
    auto draw_pair = [&](const ComponentParams &p, double &x0, double &x1) {
        const double z0 = rng.normal();
        const double z1 = rng.normal();
        x0 = std::exp(p.mu0 + std::sqrt(p.tau0) * z0);
        x1 = std::exp(p.mu1 +
                      std::sqrt(p.tau1) * (p.rho * z0 + std::sqrt(1.0 - p.rho * p.rho) * z1));
    };

    std::size_t hits = 0;
    for (std::size_t k = 0; k < n_draws; ++k) {
        double t0, t1, v0, v1;
        draw_pair(theta.tumour, t0, t1);
        draw_pair(theta.background, v0, v1);
        const double y0 = pi.pi0 * t0 + (1.0 - pi.pi0) * v0;
        const double y1 = pi.pi1 * t1 + (1.0 - pi.pi1) * v1;
        if (y0 >= a0 && y0 <= b0 && y1 >= a1 && y1 <= b1) ++hits;
    }
    McEstimate est;
    est.prob = double(hits) / double(n_draws);
    est.se = std::sqrt(std::max(est.prob * (1.0 - est.prob), 1.0 / double(n_draws)) /
                       double(n_draws));
    return est;
}

std::vector<BatteryCase> make_battery(std::uint64_t seed, std::size_t size) {
    static const double pi1_levels[4] = {1e-4, 1e-2, 0.1, 0.3};
    std::vector<BatteryCase> battery;
    battery.reserve(size);
    for (std::size_t k = 0; k < size; ++k) {
        Rng rng = Rng::substream(seed, "battery", k);
        BatteryCase c;
        c.pi.pi1 = pi1_levels[k % 4];
        c.pi.pi0 = std::min(0.9, c.pi.pi1 + rng.uniform(0.05, 0.35));

        const double mu_t = rng.uniform(2.5, 3.5);
        c.theta.tumour.mu0 = c.theta.tumour.mu1 = mu_t;
        c.theta.tumour.tau0 = rng.uniform(0.3, 1.0);
        c.theta.tumour.tau1 = rng.uniform(0.3, 1.0);
        c.theta.tumour.rho = rng.uniform(0.85, 0.98);

        c.theta.background.mu0 = rng.uniform(1.0, 2.0);
        c.theta.background.mu1 = c.theta.background.mu0 + rng.normal(0.0, 0.1);
        c.theta.background.tau0 = rng.uniform(0.3, 1.0);
        c.theta.background.tau1 = rng.uniform(0.3, 1.0);
        c.theta.background.rho = rng.uniform(0.5, 0.95);

        // Observation drawn from the model itself, so the realisation's
        // cell is in a region where both components carry mass.
        auto draw_pair = [&](const ComponentParams &p, double &x0, double &x1) {
            const double z0 = rng.normal();
            const double z1 = rng.normal();
            x0 = std::exp(p.mu0 + std::sqrt(p.tau0) * z0);
            x1 = std::exp(p.mu1 + std::sqrt(p.tau1) *
                                      (p.rho * z0 + std::sqrt(1.0 - p.rho * p.rho) * z1));
        };
        double t0, t1, v0, v1;
        draw_pair(c.theta.tumour, t0, t1);
        draw_pair(c.theta.background, v0, v1);
        c.obs.y0 = c.pi.pi0 * t0 + (1.0 - c.pi.pi0) * v0;
        c.obs.y1 = c.pi.pi1 * t1 + (1.0 - c.pi.pi1) * v1;
        battery.push_back(c);
    }
    return battery;
}

}  // namespace bideconv
