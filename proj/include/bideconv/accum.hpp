#pragma once

#include <cmath>

namespace bideconv {

// Neumaier compensated summation. Monotone-ascent checks compare totals
// of ~1e5 magnitude against a 1e-6 tolerance, which plain accumulation
// rounding could breach.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

}  // namespace bideconv
