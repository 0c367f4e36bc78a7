#pragma once

#include <cmath>

namespace bideconv {

// Standard normal density.
inline double norm_pdf(double z) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

// Standard normal CDF via erfc; accurate over the full double range.
inline double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

// Inverse standard normal CDF, p in (0, 1). Acklam's rational
// approximation polished with one Halley step (~1e-15 accuracy).
double norm_quantile(double p);

// P(Z0 <= a, Z1 <= b) for a standard bivariate normal pair with
// correlation rho, |rho| < 1 (strict). a and b may be +-infinity.
// Absolute accuracy well below 1e-7.
double std_binorm_cdf(double a, double b, double rho);

}  // namespace bideconv
