#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bideconv {

// Root mean squared error between estimates and truth.
double rmse(const std::vector<double> &est, const std::vector<double> &truth);

// Pearson correlation; throws undefined_statistic on zero variance.
double association(const std::vector<double> &est, const std::vector<double> &truth);

// Spearman rank correlation (midranks for ties); optional alternative
// association measure.
double spearman(const std::vector<double> &est, const std::vector<double> &truth);

// 1 where strictly above the sample median (midpoint convention), else 0.
// Ties at the median count as below; the convention matters for the
// zero-inflated predictors this is applied to.
std::vector<int> dichotomise_at_median(const std::vector<double> &x);

// Mann-Whitney AUC: probability a random positive outranks a random
// negative, ties counted half.
double roc_auc(const std::vector<double> &scores, const std::vector<int> &labels);

// Two-sided rank-sum p-value: exact enumeration when the combined sample
// size is <= 20 with no ties, otherwise normal approximation with tie
// and continuity corrections.
double wilcoxon_ranksum_p(const std::vector<double> &x, const std::vector<double> &y);

// Two-sided Fisher exact p for a 2x2 table: sum of hypergeometric
// probabilities not exceeding the observed table's.
double fisher_exact_p(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

struct LogisticBinaryFit {
    double beta = 0.0;        // log odds ratio (exact MLE for a binary predictor)
    double odds_ratio = 1.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // Wald 95% CI on the odds ratio
    double se = 0.0;
    double p = 1.0;           // Wald z test
};

// Logistic regression of a binary outcome on a binary predictor via the
// closed-form 2x2 identity. Throws undefined_statistic when a cell is
// empty (separation; Fisher is the fallback).
LogisticBinaryFit logistic_binary_fit(const std::vector<int> &predictor,
                                      const std::vector<int> &outcome);

struct OutcomeRecord {
    std::string patient_id;
    int relapse_1yr = 0;   // binary outcome (no censoring within the year)
    double time_days = 0.0;
    int event = 0;         // for KM: event vs censored
    int group = 0;         // above/below median predictor
};

struct KmPoint {
    double time = 0.0;
    std::size_t n_risk = 0;
    std::size_t n_events = 0;
    double survival = 1.0;
};

// Product-limit estimator; censored subjects leave the risk set without
// a drop. One point per distinct event time.
std::vector<KmPoint> km_curve(const std::vector<double> &time, const std::vector<int> &event);

}  // namespace bideconv
