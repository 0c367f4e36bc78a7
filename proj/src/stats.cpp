#include "bideconv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bideconv/errors.hpp"
#include "bideconv/normal.hpp"

namespace bideconv {

namespace {

std::vector<double> midranks(const std::vector<double> &v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * double(i + j) + 1.0;  // average of 1-based ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    return rank;
}

double sample_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double rmse(const std::vector<double> &est, const std::vector<double> &truth) {
    if (est.size() != truth.size() || est.empty())
        throw std::invalid_argument("rmse: length mismatch or empty input");
    double ss = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const double d = est[i] - truth[i];
        ss += d * d;
    }
    return std::sqrt(ss / double(est.size()));
}

double association(const std::vector<double> &est, const std::vector<double> &truth) {
    if (est.size() != truth.size() || est.size() < 2)
        throw std::invalid_argument("association: need two equally sized samples");
    const double n = double(est.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        mx += est[i];
        my += truth[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const double dx = est[i] - mx;
        const double dy = truth[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw undefined_statistic("association: zero variance in a sample");
    return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double> &est, const std::vector<double> &truth) {
    if (est.size() != truth.size() || est.size() < 2)
        throw std::invalid_argument("spearman: need two equally sized samples");
    return association(midranks(est), midranks(truth));
}

std::vector<int> dichotomise_at_median(const std::vector<double> &x) {
    if (x.size() < 2) throw std::invalid_argument("dichotomise_at_median: need length >= 2");
    const double med = sample_median(x);
    std::vector<int> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > med ? 1 : 0;
    return out;
}

double roc_auc(const std::vector<double> &scores, const std::vector<int> &labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw std::invalid_argument("roc_auc: length mismatch or empty input");
    const auto ranks = midranks(scores);
    double rank_pos = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == 1) {
            rank_pos += ranks[i];
            ++n_pos;
        } else if (labels[i] != 0) {
            throw std::invalid_argument("roc_auc: labels must be 0/1");
        }
    }
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw undefined_statistic("roc_auc: both classes must be present");
    const double u = rank_pos - double(n_pos) * double(n_pos + 1) / 2.0;
    return u / (double(n_pos) * double(n_neg));
}

double wilcoxon_ranksum_p(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.empty() || y.empty())
        throw std::invalid_argument("wilcoxon_ranksum_p: empty sample");
    const std::size_t n1 = x.size(), n2 = y.size(), nn = n1 + n2;

    std::vector<double> all(x);
    all.insert(all.end(), y.begin(), y.end());
    const auto ranks = midranks(all);

    bool ties = false;
    {
        std::vector<double> sorted(all);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < nn; ++i)
            if (sorted[i] == sorted[i + 1]) ties = true;
    }

    double w = 0.0;
    for (std::size_t i = 0; i < n1; ++i) w += ranks[i];
    const double mean_w = double(n1) * double(nn + 1) / 2.0;

    if (nn <= 20 && !ties) {
        // Exact null distribution of the rank sum: counts[k][s] =
        // subsets of size k of {1..nn} with sum s.
        const std::size_t max_sum = nn * (nn + 1) / 2;
        std::vector<std::vector<double>> counts(n1 + 1,
                                                std::vector<double>(max_sum + 1, 0.0));
        counts[0][0] = 1.0;
        for (std::size_t r = 1; r <= nn; ++r) {
            for (std::size_t k = std::min(n1, r); k >= 1; --k) {
                for (std::size_t s = max_sum; s >= r; --s) {
                    counts[k][s] += counts[k - 1][s - r];
                }
                if (k == 1) break;
            }
        }
        double total = 0.0, extreme = 0.0;
        const double dev = std::fabs(w - mean_w);
        for (std::size_t s = 0; s <= max_sum; ++s) {
            total += counts[n1][s];
            if (std::fabs(double(s) - mean_w) >= dev - 1e-9) extreme += counts[n1][s];
        }
        return std::min(1.0, extreme / total);
    }

    // Normal approximation with tie correction and continuity correction.
    double tie_term = 0.0;
    {
        std::map<double, std::size_t> tally;
        for (double v : all) ++tally[v];
        for (const auto &[val, t] : tally) {
            (void)val;
            tie_term += double(t) * double(t) * double(t) - double(t);
        }
    }
    const double var_w = (double(n1) * double(n2) / 12.0) *
                         (double(nn + 1) - tie_term / (double(nn) * double(nn - 1)));
    if (var_w <= 0.0) return 1.0;
    const double dev = std::fabs(w - mean_w);
    const double z = std::max(0.0, dev - 0.5) / std::sqrt(var_w);
    return std::min(1.0, std::max(2.0 * (1.0 - norm_cdf(z)), 1e-300));
}

double fisher_exact_p(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw std::invalid_argument("fisher_exact_p: counts must be non-negative");
    const std::int64_t r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
    if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
        throw undefined_statistic("fisher_exact_p: zero margin");
    const std::int64_t n = r1 + r2;

    auto log_pmf = [&](std::int64_t k) {
        return std::lgamma(double(r1 + 1)) - std::lgamma(double(k + 1)) -
               std::lgamma(double(r1 - k + 1)) + std::lgamma(double(r2 + 1)) -
               std::lgamma(double(c1 - k + 1)) - std::lgamma(double(r2 - c1 + k + 1)) -
               (std::lgamma(double(n + 1)) - std::lgamma(double(c1 + 1)) -
                std::lgamma(double(n - c1 + 1)));
    };

    const std::int64_t k_lo = std::max<std::int64_t>(0, c1 - r2);
    const std::int64_t k_hi = std::min(r1, c1);
    const double obs = log_pmf(a);
    double p = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double lp = log_pmf(k);
        if (lp <= obs + 1e-7) p += std::exp(lp);
    }
    return std::min(1.0, p);
}

LogisticBinaryFit logistic_binary_fit(const std::vector<int> &predictor,
                                      const std::vector<int> &outcome) {
    if (predictor.size() != outcome.size() || predictor.empty())
        throw std::invalid_argument("logistic_binary_fit: length mismatch or empty input");
    double a = 0, b = 0, c = 0, d = 0;  // a: x=1,y=1; b: x=1,y=0; c: x=0,y=1; d: x=0,y=0
    for (std::size_t i = 0; i < predictor.size(); ++i) {
        const int x = predictor[i], y = outcome[i];
        if ((x != 0 && x != 1) || (y != 0 && y != 1))
            throw std::invalid_argument("logistic_binary_fit: inputs must be 0/1");
        if (x == 1 && y == 1)
            ++a;
        else if (x == 1)
            ++b;
        else if (y == 1)
            ++c;
        else
            ++d;
    }
    if (a == 0 || b == 0 || c == 0 || d == 0)
        throw undefined_statistic(
            "logistic_binary_fit: empty cell in the 2x2 table (separation); use Fisher");

    LogisticBinaryFit fit;
    fit.beta = std::log((a * d) / (b * c));
    fit.odds_ratio = std::exp(fit.beta);
    fit.se = std::sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d);
    fit.ci_lo = std::exp(fit.beta - 1.96 * fit.se);
    fit.ci_hi = std::exp(fit.beta + 1.96 * fit.se);
    const double z = std::fabs(fit.beta) / fit.se;
    fit.p = std::min(1.0, std::max(2.0 * (1.0 - norm_cdf(z)), 1e-300));
    return fit;
}

std::vector<KmPoint> km_curve(const std::vector<double> &time, const std::vector<int> &event) {
    if (time.size() != event.size())
        throw std::invalid_argument("km_curve: length mismatch");
    for (double t : time)
        if (!(t >= 0.0)) throw std::invalid_argument("km_curve: times must be >= 0");

    std::vector<std::size_t> order(time.size());
    std::iota(order.begin(), order.end(), 0);
    // Events sort before censorings at equal times: the censored subject
    // is still at risk for that event.
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (time[i] != time[j]) return time[i] < time[j];
        return event[i] > event[j];
    });

    std::vector<KmPoint> curve;
    double surv = 1.0;
    std::size_t at_risk = time.size();
    std::size_t k = 0;
    while (k < order.size()) {
        const double t = time[order[k]];
        std::size_t deaths = 0, leaving = 0;
        while (k < order.size() && time[order[k]] == t) {
            deaths += event[order[k]] == 1 ? 1 : 0;
            ++leaving;
            ++k;
        }
        if (deaths > 0) {
            surv *= 1.0 - double(deaths) / double(at_risk);
            curve.push_back({t, at_risk, deaths, surv});
        }
        at_risk -= leaving;
    }
    return curve;
}

}  // namespace bideconv
