#include "bideconv/scalar_search.hpp"

#include <algorithm>
#include <limits>

namespace bideconv {

ScalarMax maximize_scalar(const std::function<double(double)> &f, double lo, double hi,
                          double xtol, int max_iter) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: empty bracket");
    if (!(xtol > 0.0)) throw std::invalid_argument("maximize_scalar: tolerance must be > 0");

    const double golden = 0.3819660112501051518;  // (3 - sqrt(5)) / 2
    const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    int evals = 0;
    auto neg = [&](double t) {
        ++evals;
        return -f(t);
    };
    double fx = neg(x);
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int iter = 0; iter < max_iter; ++iter) {
        const double mid = 0.5 * (a + b);
        const double tol_act = sqrt_eps * std::fabs(x) + xtol / 3.0;
        if (std::fabs(x - mid) + 0.5 * (b - a) <= 2.0 * tol_act) break;

        bool use_golden = true;
        if (std::fabs(e) > tol_act) {
            // Parabola through (v, fv), (w, fw), (x, fx).
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0)
                p = -p;
            else
                q = -q;
            const double e_prev = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * e_prev) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                // Keep proposals away from the boundary.
                if (u - a < 2.0 * tol_act || b - u < 2.0 * tol_act)
                    d = (x < mid) ? tol_act : -tol_act;
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < mid) ? b - x : a - x;
            d = golden * e;
        }
        double u = (std::fabs(d) >= tol_act) ? x + d : x + (d > 0.0 ? tol_act : -tol_act);
        const double fu = neg(u);

        if (fu <= fx) {
            if (u < x)
                b = x;
            else
                a = x;
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x)
                a = u;
            else
                b = u;
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    return {x, -fx, evals};
}

}  // namespace bideconv
