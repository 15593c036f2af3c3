#include "ocm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ocm {

namespace {
constexpr double kSqrtPi = 1.77245385090551602730;
}

double exponential_integral_e1(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("exponential_integral_e1: requires x > 0");
    }
    // E1(x) = -Ei(-x) for x > 0.
    return -std::expint(-x);
}

double upper_incomplete_gamma_half(double w) {
    if (!(w >= 0.0)) {
        throw std::domain_error("upper_incomplete_gamma_half: requires w >= 0");
    }
    return kSqrtPi * std::erfc(std::sqrt(w));
}

double gamma3_cdf(double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    return 1.0 - std::exp(-x) * (1.0 + x + 0.5 * x * x);
}

double gamma3_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("gamma3_quantile: requires u in (0,1)");
    }
    // Monotone bisection, then Newton polish.
    double lo = 0.0;
    double hi = 1.0;
    while (gamma3_cdf(hi) < u) {
        hi *= 2.0;
        if (hi > 1e6) {
            break;
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gamma3_cdf(mid) < u ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double pdf = 0.5 * x * x * std::exp(-x);
        if (pdf <= 0.0) {
            break;
        }
        x -= (gamma3_cdf(x) - u) / pdf;
    }
    return x;
}

}  // namespace ocm
