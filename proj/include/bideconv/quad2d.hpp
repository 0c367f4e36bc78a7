#pragma once

#include <cstddef>
#include <functional>

namespace bideconv {

struct Quad2dResult {
    double value = 0.0;
    double error = 0.0;  // summed per-region error estimates
    std::size_t regions = 0;
    bool converged = false;
};

// Globally adaptive tensor Gauss-Legendre cubature over an axis-aligned
// rectangle. Each region is scored by the difference between a 7x7 and a
// 4x4 rule; the worst region is bisected along its (relatively) longer
// side until the summed error drops below max(abs_tol, rel_tol*|value|)
// or the region cap is hit. Deliberately plain: this is the trusted
// slow path that validates the fast one.
Quad2dResult integrate2d(const std::function<double(double, double)> &f, double x_lo,
                         double x_hi, double y_lo, double y_hi, double rel_tol = 1e-6,
                         double abs_tol = 1e-14, std::size_t max_regions = 20000);

}  // namespace bideconv
