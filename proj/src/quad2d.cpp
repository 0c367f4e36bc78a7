#include "bideconv/quad2d.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bideconv {

namespace {

constexpr double gl4_x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                             0.8611363115940526};
constexpr double gl4_w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                             0.3478548451374538};

constexpr double gl7_x[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                             0.0,
                             0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr double gl7_w[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                             0.4179591836734694,
                             0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

struct Region {
    double x_lo, x_hi, y_lo, y_hi;
    double value;
    double error;
};

struct WorseError {
    bool operator()(const Region &a, const Region &b) const { return a.error < b.error; }
};

template <int N>
double tensor_rule(const std::function<double(double, double)> &f, const double *xs,
                   const double *ws, const Region &r) {
    const double cx = 0.5 * (r.x_lo + r.x_hi), hx = 0.5 * (r.x_hi - r.x_lo);
    const double cy = 0.5 * (r.y_lo + r.y_hi), hy = 0.5 * (r.y_hi - r.y_lo);
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
        const double x = cx + hx * xs[i];
        double row = 0.0;
        for (int j = 0; j < N; ++j) row += ws[j] * f(x, cy + hy * xs[j]);
        sum += ws[i] * row;
    }
    return sum * hx * hy;
}

void score(const std::function<double(double, double)> &f, Region &r) {
    const double coarse = tensor_rule<4>(f, gl4_x, gl4_w, r);
    r.value = tensor_rule<7>(f, gl7_x, gl7_w, r);
    r.error = std::fabs(r.value - coarse);
}

}  // namespace

Quad2dResult integrate2d(const std::function<double(double, double)> &f, double x_lo,
                         double x_hi, double y_lo, double y_hi, double rel_tol,
                         double abs_tol, std::size_t max_regions) {
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
        throw std::invalid_argument("integrate2d: empty integration box");

    const double sx = x_hi - x_lo;  // normalisation for the split heuristic
    const double sy = y_hi - y_lo;

    std::priority_queue<Region, std::vector<Region>, WorseError> heap;
    Region root{x_lo, x_hi, y_lo, y_hi, 0.0, 0.0};
    score(f, root);
    double total = root.value;
    double total_err = root.error;
    heap.push(root);

    Quad2dResult out;
    out.regions = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (out.regions >= max_regions) {
            out.value = total;
            out.error = total_err;
            out.converged = false;
            return out;
        }
        Region worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;

        Region a = worst, b = worst;
        if ((worst.x_hi - worst.x_lo) / sx >= (worst.y_hi - worst.y_lo) / sy) {
            const double mid = 0.5 * (worst.x_lo + worst.x_hi);
            a.x_hi = mid;
            b.x_lo = mid;
        } else {
            const double mid = 0.5 * (worst.y_lo + worst.y_hi);
            a.y_hi = mid;
            b.y_lo = mid;
        }
        score(f, a);
        score(f, b);
        total += a.value + b.value;
        total_err += a.error + b.error;
        heap.push(a);
        heap.push(b);
        ++out.regions;
    }
    out.value = total;
    out.error = total_err;
    out.converged = true;
    return out;
}

}  // namespace bideconv
