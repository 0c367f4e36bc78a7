#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace bideconv {

struct ScalarMax {
    double x = 0.0;
    double fx = 0.0;
    int evals = 0;
};

// Bounded derivative-free maximisation on [lo, hi]: Brent's combination
// of golden-section and successive parabolic interpolation (the netlib
// fminbr scheme applied to -f). Returns the best point evaluated.
ScalarMax maximize_scalar(const std::function<double(double)> &f, double lo, double hi,
                          double xtol, int max_iter = 200);

}  // namespace bideconv
