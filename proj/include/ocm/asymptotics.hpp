#pragma once

#include <cstddef>

#include "ocm/isotonic.hpp"
#include "ocm/observations.hpp"
#include "ocm/transforms.hpp"

namespace ocm {

/// Bandwidth rule b_n = c_b * scale * n^{-1/3}. The scale defaults to the
/// sample median of Z so that c_b = 1 means "one median-Z unit"; disable
/// scale_by_median_z for a raw c_b * n^{-1/3} window.
struct BandwidthConfig {
    double c_b = 1.0;
    bool scale_by_median_z = true;
};

double resolve_bandwidth(const BandwidthConfig& bw, const ObservationSet& obs);

/// Boundary-window estimate plus the number of observations that fell in
/// the window. A zero count is reported, never thrown; the value is then 0.
struct BoundaryEstimate {
    double value;
    std::size_t count;

    bool low_count() const { return count == 0; }
};

/// Estimates xi_g^j = int h^j g(0,h) dh with the one-sided window
/// [0, b_n] on Z. j must be 0, 1 or 2.
BoundaryEstimate xi_hat(const ObservationSet& obs, int j, const BandwidthConfig& bw);

/// Estimates tau_q(0), the density of Z - q(H;t) at zero, with the
/// two-sided window [-b_n, b_n].
BoundaryEstimate tau_hat(const ObservationSet& obs, QuantityKind kind, double t,
                         const BandwidthConfig& bw);

/// Asymptotic variance of the covariance estimator, with empirical means
/// and boundary estimates plugged into the delta-method expression.
double var_covariance(const ObservationSet& obs, const BandwidthConfig& bw);

enum class MomentRow {
    kRadius,
    kSquaredRadius,
    kHeight,
    kVolume,
    kSurfaceArea,
};

/// Asymptotic variance of the moment estimator for one row of the moment
/// table.
double var_moment(const ObservationSet& obs, MomentRow row, const BandwidthConfig& bw);

/// Shared CDF-variance expression (n0^2 tau0 + nt^2 gz0) / n0^4. The
/// isotonic variance is exactly half of this for identical inputs.
double cdf_variance_kernel(double n0, double nt, double tau0, double gz0);

double var_cdf_plugin(const ObservationSet& obs, QuantityKind kind, double t,
                      const BandwidthConfig& bw);

/// Isotonic-CDF variance with a prebuilt isotonic fit (preferred when
/// evaluating many t on one dataset)...
double var_cdf_isotonic(const MonotoneCurve& n_hat_curve, const ObservationSet& obs,
                        QuantityKind kind, double t, const BandwidthConfig& bw);
/// ...or building the fit internally.
double var_cdf_isotonic(const ObservationSet& obs, QuantityKind kind, double t,
                        const BandwidthConfig& bw, int refine = 16);

/// Boundary-window estimates of the height-split integrals of g(0, .):
/// above -> int_h^inf g(0,y) dy (window H > h),
/// below -> int_0^h g(0,y) dy (window H <= h).
struct HeightTailEstimates {
    BoundaryEstimate above;
    BoundaryEstimate below;
};

HeightTailEstimates height_boundary_integrals(const ObservationSet& obs, double h,
                                              const BandwidthConfig& bw);

/// Asymptotic variance of the weighted height-CDF estimator at h.
double var_height_cdf(const ObservationSet& obs, double h, const BandwidthConfig& bw);

/// Point estimate with 95% half-width at the sqrt(ln n / n) rate.
struct EstimateWithCI {
    double estimate;
    double nu2;
    double half_width;
    std::size_t n;
    bool clamped;  // true when a negative variance estimate was clamped to 0

    double lower() const { return estimate - half_width; }
    double upper() const { return estimate + half_width; }
};

/// half_width = 1.96 * sqrt(nu2 * ln(n) / n); negative nu2 is clamped to
/// zero (flagged), never thrown. Requires n >= 2.
EstimateWithCI ci(double estimate, double nu2, std::size_t n);

}  // namespace ocm
