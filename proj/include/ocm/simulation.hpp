#pragma once

#include <cstdint>
#include <vector>

#include "ocm/observations.hpp"
#include "ocm/rng.hpp"

namespace ocm::sim {

/// Parameters of the worked-example experiment: squared radius X is
/// Gamma(3), the height given X = x is triangular on [0, x] with density
/// 2(x-h)/x^2.
struct SimulationSpec {
    enum class Mode { kDirect2D, kSlice3D };

    std::size_t n = 500;
    std::uint64_t seed = 1;
    Mode mode = Mode::kDirect2D;
    std::size_t replicates = 1;
};

/// One 3D cylinder: squared radius x and height h.
struct CylinderSample {
    double x;
    double h;
};

/// Empirical mean radius of a cylinder sample, mean of sqrt(x).
double mean_radius(const std::vector<CylinderSample>& cyls);

// ---- analytic model quantities -------------------------------------------

/// Marginal density of the squared half-width, (4/15)(z^2+z+3/4)e^{-z}.
double gz_density(double z);
/// Its CDF, 1 - e^{-z}(4z^2+12z+15)/15.
double gz_cdf(double z);
/// Quantile via safeguarded Newton on the log form; exact through the tail.
double gz_quantile(double u);
/// Conditional density of the height given Z = z (two branches, kink at
/// h = z).
double conditional_height_density(double h, double z);
/// Joint observable density g(z, h).
double joint_density_2d(double z, double h);
/// Joint cylinder density f(x, h) = (x-h)e^{-x} on 0 < h < x.
double joint_density_3d(double x, double h);
/// Distribution function of the cylinder volume pi*X*H under the 3D model.
double volume_cdf(double v);

// ---- samplers --------------------------------------------------------------

std::vector<CylinderSample> sample_3d(Rng& rng, std::size_t n);
std::vector<CylinderSample> sample_3d(const SimulationSpec& spec);

double sample_gz(Rng& rng);
/// Height draw from the conditional law at Z = z: exact inversion below z,
/// rejection with a shifted Gamma(1/2) envelope above (acceptance 3/8).
double sample_height_given_z(Rng& rng, double z);

ObservationSet sample_2d_direct(Rng& rng, std::size_t n);
ObservationSet sample_2d_direct(const SimulationSpec& spec);

/// Slab geometry for the brute-force sampler: cylinders live in a box of
/// the given side, the cut plane is parallel to their axes at
/// plane_position.
struct SliceWorld {
    double box_side;
    double plane_position;
};

/// Box side 20x the 99.9% radius quantile, plane through the middle.
SliceWorld default_slice_world();

/// Geometric sampler: draws cylinders, places centers uniformly, keeps the
/// ones the plane cuts and records squared half-width z = x - d^2. The
/// cylinder generator is injectable so the size-biasing can be checked for
/// arbitrary radius laws. attempts_out (optional) receives the number of
/// candidate cylinders drawn.
template <typename CylGen>
ObservationSet slice_sample(Rng& rng, const SliceWorld& world, std::size_t n,
                            CylGen&& gen, std::size_t* attempts_out = nullptr) {
    std::vector<Observation> kept;
    kept.reserve(n);
    std::size_t attempts = 0;
    while (kept.size() < n) {
        ++attempts;
        const CylinderSample c = gen(rng);
        const double center = world.box_side * rng.uniform();
        const double d = center - world.plane_position;
        const double z = c.x - d * d;
        if (z > 0.0) {
            kept.push_back(Observation{z, c.h});
        }
    }
    if (attempts_out != nullptr) {
        *attempts_out = attempts;
    }
    return ObservationSet(std::move(kept));
}

ObservationSet slice_oracle(const SimulationSpec& spec);

// ---- quadrature truths ------------------------------------------------------

/// Covariance of radius and height under the 3D model, by numerical
/// integration of the observable-moment expression.
double true_covariance();

/// The same asymptotic variance computed along both routes: from moments
/// of the observable density and from moments of the cylinder density.
struct TrueNu2 {
    double observable_side;
    double cylinder_side;
};

TrueNu2 true_nu2();

// ---- covariance experiment --------------------------------------------------

struct Table3Row {
    std::size_t n;
    double sigma_hat;    // covariance estimate, single run
    double nu2_hat;      // asymptotic-variance estimate, single run
    double half_width;   // 95% CI half-width from the single run
    double mean_sigma;   // covariance estimate averaged over replicates
};

struct Table3Report {
    std::vector<Table3Row> rows;  // n in {50, 500, 5000, 50000}
    double true_sigma;
    double true_nu2;
};

/// Runs the covariance experiment at n in {50, 500, 5000, 50000} with
/// spec.replicates replicate runs per sample size (replicates run in
/// parallel on independent streams; results do not depend on thread
/// count).
Table3Report run_table3(const SimulationSpec& spec);

}  // namespace ocm::sim
