#pragma once

#include "bideconv/types.hpp"

namespace bideconv {

// Density of the bivariate log-normal at (x0, x1), x0 > 0, x1 > 0.
// Integrates to 1 over the positive quadrant.
double biv_lognormal_pdf(double x0, double x1, const ComponentParams &p);

// Log of the density, kept separate for underflow-safe cell masses.
double biv_lognormal_logpdf(double x0, double x1, const ComponentParams &p);

// F(x0, x1) = P(X0 <= x0, X1 <= x1); zero when either argument is 0
// (log-normal support is strictly positive). Arguments must be >= 0.
double biv_lognormal_cdf(double x0, double x1, const ComponentParams &p);

}  // namespace bideconv
