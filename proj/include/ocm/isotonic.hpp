#pragma once

#include <span>
#include <vector>

#include "ocm/observations.hpp"
#include "ocm/transforms.hpp"

namespace ocm {

/// Right-continuous step function with monotone values: value values()[k]
/// holds on [knots()[k], knots()[k+1]) and tail() holds from the last knot
/// on. Evaluation below the first knot returns the first value.
class MonotoneCurve {
public:
    MonotoneCurve(std::vector<double> knots, std::vector<double> values, double tail);

    double operator()(double t) const;

    std::span<const double> knots() const { return knots_; }
    std::span<const double> values() const { return values_; }
    double tail() const { return tail_; }

private:
    std::vector<double> knots_;   // strictly increasing, size m+1
    std::vector<double> values_;  // size m
    double tail_;
};

/// U_n evaluated exactly (per-term antiderivatives) on a breakpoint grid
/// that contains t = 0 and every pole p(H_i; Z_i). Between consecutive
/// poles U_n is convex, so the least concave majorant touches U_n only at
/// breakpoints; the hull of this grid is the exact continuous majorant.
struct IntegratedCurve {
    QuantityKind kind;
    std::vector<double> breakpoints;
    std::vector<double> values;
};

/// How integrate_n_tilde obtains U_n values.
enum class UnMethod {
    kClosedForm,   // exact per-term antiderivatives
    kQuadrature,   // adaptive Gauss-Kronrod fallback (abs tol 1e-10)
};

/// Integral of the plug-in estimator, U_n(t) = int_0^t n_tilde(u) du,
/// evaluated in closed form. Finite and continuous through the poles.
double u_n(const ObservationSet& obs, QuantityKind kind, double t);

/// Quadrature route for U_n: per-term adaptive Gauss-Kronrod after
/// substituting away the inverse-square-root singularity at each pole.
double u_n_quadrature(const ObservationSet& obs, QuantityKind kind, double t,
                      double abs_tol = 1e-10);

/// Batch U_n over a grid; parallel version is bitwise identical to the
/// serial reference for any thread count.
void u_n_grid(const ObservationSet& obs, QuantityKind kind,
              std::span<const double> ts, std::span<double> out);
void u_n_grid_serial(const ObservationSet& obs, QuantityKind kind,
                     std::span<const double> ts, std::span<double> out);

/// Builds the breakpoint grid (poles plus `refine` geometrically placed
/// points per inter-pole interval, clustered toward the upper end where
/// the integrand is steep) and evaluates U_n on it.
IntegratedCurve integrate_n_tilde(const ObservationSet& obs, QuantityKind kind,
                                  int refine = 16, UnMethod method = UnMethod::kClosedForm);

/// Least concave majorant of the integrated curve. Returned curve holds
/// the right-hand derivative of the majorant: nonincreasing nonnegative
/// slopes over the hull knots, zero beyond the largest pole.
MonotoneCurve least_concave_majorant(const IntegratedCurve& curve);

/// Monotone estimator of N: right-hand derivative of the least concave
/// majorant of U_n.
MonotoneCurve isotonic_n_hat(const ObservationSet& obs, QuantityKind kind, int refine = 16);

/// Convenience point evaluation of the isotonic estimator (builds the full
/// fit; prefer isotonic_n_hat for repeated queries).
double n_hat(const ObservationSet& obs, QuantityKind kind, double t, int refine = 16);

/// Isotonic CDF estimate 1 - n_hat(t)/n_hat(0) sampled on `grid`
/// (ascending). Nondecreasing with values in [0, 1].
MonotoneCurve isotonic_cdf(const ObservationSet& obs, QuantityKind kind,
                           std::span<const double> grid, int refine = 16);

}  // namespace ocm
