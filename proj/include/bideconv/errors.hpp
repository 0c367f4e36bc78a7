#pragma once

#include <stdexcept>
#include <string>

namespace bideconv {

// Numerical failure (underflow cascades, non-finite likelihoods, ...).
// Carries whatever context the thrower could attach.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Quadrature did not reach the requested tolerance within the region cap.
// The last estimate and its error bound are kept so callers can decide
// whether the partial answer is still usable.
struct quadrature_error : numerical_error {
    quadrature_error(const std::string &msg, double estimate_, double error_bound_)
        : numerical_error(msg), estimate(estimate_), error_bound(error_bound_) {}
    double estimate;
    double error_bound;
};

// Malformed or inconsistent input data (files, id mismatches, ...).
struct data_error : std::runtime_error {
    explicit data_error(const std::string &msg) : std::runtime_error(msg) {}
};

// A statistic whose defining conditions are not met (zero variance,
// single-class labels, zero margins).
struct undefined_statistic : std::runtime_error {
    explicit undefined_statistic(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace bideconv
