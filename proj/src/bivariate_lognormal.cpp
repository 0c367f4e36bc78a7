#include "bideconv/bivariate_lognormal.hpp"

#include <cmath>
#include <stdexcept>

#include "bideconv/normal.hpp"

namespace bideconv {

double biv_lognormal_logpdf(double x0, double x1, const ComponentParams &p) {
    if (!(x0 > 0.0) || !(x1 > 0.0))
        throw std::invalid_argument("biv_lognormal_pdf: arguments must be > 0");
    validate(p, "biv_lognormal_pdf");

    const double lx0 = std::log(x0);
    const double lx1 = std::log(x1);
    const double sd0 = std::sqrt(p.tau0);
    const double sd1 = std::sqrt(p.tau1);
    const double z0 = (lx0 - p.mu0) / sd0;
    const double z1 = (lx1 - p.mu1) / sd1;
    const double omr2 = 1.0 - p.rho * p.rho;
    const double q = (z0 * z0 - 2.0 * p.rho * z0 * z1 + z1 * z1) / omr2;

    static const double log_2pi = 1.8378770664093454836;
    return -log_2pi - 0.5 * std::log(p.tau0 * p.tau1 * omr2) - lx0 - lx1 - 0.5 * q;
}

double biv_lognormal_pdf(double x0, double x1, const ComponentParams &p) {
    return std::exp(biv_lognormal_logpdf(x0, x1, p));
}

double biv_lognormal_cdf(double x0, double x1, const ComponentParams &p) {
    if (x0 < 0.0 || x1 < 0.0)
        throw std::invalid_argument("biv_lognormal_cdf: arguments must be >= 0");
    validate(p, "biv_lognormal_cdf");
    if (x0 == 0.0 || x1 == 0.0) return 0.0;

    const double a = (std::log(x0) - p.mu0) / std::sqrt(p.tau0);
    const double b = (std::log(x1) - p.mu1) / std::sqrt(p.tau1);
    return std_binorm_cdf(a, b, p.rho);
}

}  // namespace bideconv
