#pragma once

#include <span>
#include <vector>

#include "ocm/observations.hpp"
#include "ocm/transforms.hpp"

namespace ocm {

/// One evaluation of the plug-in CDF estimate. f follows the defining
/// ratio 1 - n_tilde(t)/n_tilde(0) exactly; it is not clamped, so it can
/// leave [0,1] near poles of the nonmonotone plug-in estimator.
struct PluginCdfPoint {
    double t;
    double f;
    double n_tilde;
};

/// Empirical moment estimates of the 3D quantities (units: radius and
/// height in length, squared radius and surface area in length^2, volume
/// in length^3). m_g_minus is the sample mean of Z^{-1/2}.
struct MomentSet {
    double radius;
    double squared_radius;
    double height;
    double volume;
    double surface_area;
    double m_g_minus;
};

/// Plug-in estimator: mean of (Z_i - q(H_i;t))^{-1/2} over observations
/// with Z_i > q(H_i;t). Returns +infinity exactly when some Z_i equals
/// q(H_i;t) (the pole condition); callers may perturb t and retry.
double n_tilde(const ObservationSet& obs, QuantityKind kind, double t);

/// True when t sits exactly on a pole, i.e. Z_i == q(H_i;t) for some i.
bool n_tilde_has_pole(const ObservationSet& obs, QuantityKind kind, double t);

/// Batch evaluation over a grid. The parallel version distributes grid
/// points over OpenMP threads; each point is reduced in observation order,
/// so results are bitwise identical to the serial reference for any thread
/// count.
void n_tilde_grid(const ObservationSet& obs, QuantityKind kind,
                  std::span<const double> ts, std::span<double> out);
void n_tilde_grid_serial(const ObservationSet& obs, QuantityKind kind,
                         std::span<const double> ts, std::span<double> out);

/// Plug-in CDF estimate on an ascending grid. Throws PoleError if a grid
/// point collides exactly with a pole.
std::vector<PluginCdfPoint> plugin_cdf(const ObservationSet& obs, QuantityKind kind,
                                       std::span<const double> grid);

/// Radius-weighted estimator of the height CDF (the jump at H_i carries
/// weight proportional to Z_i^{-1/2}).
double height_cdf_weighted(const ObservationSet& obs, double h);

/// Plain ECDF of the heights. Consistent for the 3D height distribution
/// only when height and radius are independent; biased otherwise.
double height_cdf_unweighted(const ObservationSet& obs, double h);

MomentSet moments(const ObservationSet& obs);

/// Estimate of the covariance between cylinder radius and height.
/// Requires n >= 2.
double covariance_hat(const ObservationSet& obs);

/// Pole locations p(H_i; Z_i) of the plug-in estimator, sorted ascending
/// (duplicates kept).
std::vector<double> pole_locations(const ObservationSet& obs, QuantityKind kind);

}  // namespace ocm
