#pragma once

#include <cmath>
#include <utility>

#include "ocm/errors.hpp"

namespace ocm {

/// Adaptive Gauss-Kronrod (G7,K15) quadrature on a finite interval.
/// Integrands must be smooth on [a,b]; callers are responsible for
/// substituting away endpoint singularities first. Throws NumericalError
/// when the error estimate cannot be brought below the tolerance.
struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 48;
};

namespace detail {

// K15 abscissae (nonnegative half) and weights; G7 reuses the odd nodes.
inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double resk = 0.0;
    double resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = f(c);
        } else {
            fsum = f(c - half * kNodes[i]) + f(c + half * kNodes[i]);
        }
        resk += kWeightsK[i] * fsum;
        if (i % 2 == 1) {
            resg += kWeightsG[i / 2] * fsum;
        } else if (i == 7) {
            resg += kWeightsG[3] * fsum;
        }
    }
    resk *= half;
    resg *= half;
    return {resk, std::abs(resk - resg)};
}

template <typename F>
double integrate_rec(F&& f, double a, double b, double tol, int depth, int max_depth) {
    auto [value, err] = gk15(f, a, b);
    if (err <= tol || !(b > a)) {
        return value;
    }
    if (depth >= max_depth) {
        if (err > 1e3 * tol) {
            throw NumericalError("integrate_gk15: did not converge (residual error " +
                                 std::to_string(err) + ")");
        }
        return value;
    }
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           integrate_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

template <typename F>
double integrate_gk15(F&& f, double a, double b, QuadratureOptions opt = {}) {
    if (a == b) {
        return 0.0;
    }
    return detail::integrate_rec(f, a, b, opt.abs_tol, 0, opt.max_depth);
}

}  // namespace ocm
