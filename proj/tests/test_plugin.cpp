#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ocm/errors.hpp"
#include "ocm/plugin.hpp"
#include "ocm/rng.hpp"
#include "ocm/simulation.hpp"
#include "oracle_helpers.hpp"

using namespace ocm;

namespace {

ObservationSet single(double z, double h) {
    return ObservationSet({Observation{z, h}});
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        grid[i] = lo * std::pow(hi / lo, frac);
    }
    return grid;
}

}  // namespace

TEST_CASE("n_tilde single-term evaluations") {
    const ObservationSet obs = single(4.0, 1.0);
    CHECK(n_tilde(obs, QuantityKind::SquaredRadius, 0.0) == 0.5);
    CHECK(n_tilde(obs, QuantityKind::SquaredRadius, 5.0) == 0.0);
    CHECK(n_tilde(obs, QuantityKind::SquaredRadius, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("n_tilde reports the exact pole as infinity") {
    const ObservationSet obs = single(4.0, 1.0);
    CHECK(std::isinf(n_tilde(obs, QuantityKind::SquaredRadius, 4.0)));
    CHECK(n_tilde_has_pole(obs, QuantityKind::SquaredRadius, 4.0));
    CHECK_FALSE(n_tilde_has_pole(obs, QuantityKind::SquaredRadius, 3.9));
}

TEST_CASE("n_tilde at zero equals mean of Z^{-1/2} for every kind") {
    Rng rng(5);
    const ObservationSet obs = oracle::random_dataset(rng, 40);
    const double expected = n_tilde(obs, QuantityKind::SquaredRadius, 0.0);
    for (QuantityKind kind : kAllKinds) {
        CHECK(n_tilde(obs, kind, 0.0) == expected);
    }
}

TEST_CASE("n_tilde vanishes beyond the largest pole and is never negative") {
    Rng rng(6);
    const ObservationSet obs = oracle::random_dataset(rng, 25);
    for (QuantityKind kind : kAllKinds) {
        const std::vector<double> poles = pole_locations(obs, kind);
        CHECK(n_tilde(obs, kind, poles.back() * 1.0000001) == 0.0);
        for (double frac : {0.1, 0.5, 0.9}) {
            CHECK(n_tilde(obs, kind, poles.back() * frac) >= 0.0);
        }
    }
}

TEST_CASE("plugin_cdf endpoints and pole propagation") {
    Rng rng(8);
    const ObservationSet obs = oracle::random_dataset(rng, 30);
    const std::vector<double> poles = pole_locations(obs, QuantityKind::Volume);
    const std::vector<double> grid = {0.0, poles.back() * 0.5, poles.back() * 2.0};
    const auto points = plugin_cdf(obs, QuantityKind::Volume, grid);
    CHECK(points[0].f == 0.0);
    CHECK(points[2].f == 1.0);

    const std::vector<double> bad = {poles.front()};
    CHECK_THROWS_AS(plugin_cdf(obs, QuantityKind::Volume, bad), PoleError);
}

TEST_CASE("n_tilde(0) is consistent for the worked-example model") {
    sim::SimulationSpec spec;
    spec.n = 5000;
    spec.seed = 42;
    const ObservationSet obs = sim::sample_2d_direct(spec);
    const double n = static_cast<double>(spec.n);
    const double tol = 3.0 * std::sqrt(oracle::kXi0 * std::log(n) / n);
    CHECK(n_tilde(obs, QuantityKind::SquaredRadius, 0.0) ==
          doctest::Approx(oracle::kEgInvSqrtZ).epsilon(tol / oracle::kEgInvSqrtZ));
}

TEST_CASE("plug-in volume CDF tracks the analytic distribution") {
    // The raw plug-in estimator spikes whenever the evaluation point is
    // close to one of its n poles, so the grid takes the midpoint of the
    // widest inter-pole gap within each quantile band; that keeps every
    // point a guaranteed distance from the pole set.
    sim::SimulationSpec spec;
    spec.n = 5000;
    spec.seed = 2;
    const ObservationSet obs = sim::sample_2d_direct(spec);
    const std::vector<double> poles = pole_locations(obs, QuantityKind::Volume);
    std::vector<double> grid;
    const std::size_t lo = poles.size() / 100;
    const std::size_t hi = poles.size() - lo;
    const std::size_t per_band = (hi - lo) / 50;
    for (std::size_t band = 0; band < 50; ++band) {
        std::size_t best = lo + band * per_band;
        double best_gap = 0.0;
        for (std::size_t i = best; i + 1 < lo + (band + 1) * per_band; ++i) {
            if (poles[i + 1] - poles[i] > best_gap) {
                best_gap = poles[i + 1] - poles[i];
                best = i;
            }
        }
        if (best_gap > 0.0) {
            grid.push_back(poles[best] + 0.5 * best_gap);
        }
    }
    std::sort(grid.begin(), grid.end());
    const auto points = plugin_cdf(obs, QuantityKind::Volume, grid);
    double sup = 0.0;
    for (const PluginCdfPoint& p : points) {
        sup = std::max(sup, std::abs(p.f - sim::volume_cdf(p.t)));
    }
    CHECK(sup < 0.05);
}

TEST_CASE("weighted height CDF limits and steps") {
    const ObservationSet obs({{1.0, 1.0}, {4.0, 2.0}, {9.0, 3.0}});
    CHECK(height_cdf_weighted(obs, 0.0) == 0.0);
    CHECK(height_cdf_weighted(obs, 3.5) == 1.0);
    // Jump weights proportional to Z^{-1/2}: 1, 1/2, 1/3 normalized.
    CHECK(height_cdf_weighted(obs, 1.5) == doctest::Approx(6.0 / 11.0).epsilon(1e-15));
    CHECK(height_cdf_weighted(obs, 2.5) == doctest::Approx(9.0 / 11.0).epsilon(1e-15));
}

TEST_CASE("weighted height CDF reduces to the ECDF for equal Z") {
    const ObservationSet obs({{2.0, 1.0}, {2.0, 4.0}, {2.0, 2.0}, {2.0, 3.0}});
    for (double h : {0.5, 1.5, 2.5, 3.5, 4.5}) {
        CHECK(height_cdf_weighted(obs, h) ==
              doctest::Approx(height_cdf_unweighted(obs, h)).epsilon(1e-15));
    }
}

TEST_CASE("unweighted height CDF examples") {
    const ObservationSet obs({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}});
    CHECK(height_cdf_unweighted(obs, 2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(height_cdf_unweighted(obs, 0.0) == 0.0);
}

TEST_CASE("weighted height CDF is monotone with limits 0 and 1") {
    Rng rng(9);
    const ObservationSet obs = oracle::random_dataset(rng, 60);
    double max_h = 0.0;
    for (const Observation& o : obs) {
        max_h = std::max(max_h, o.h);
    }
    double prev = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double h = max_h * 1.05 * static_cast<double>(i) / 50.0;
        const double f = height_cdf_weighted(obs, h);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(prev == 1.0);
}

TEST_CASE("correlated model biases the unweighted height CDF") {
    // Heights grow with radii in the worked example, so the plain ECDF of
    // observed heights over-represents tall cylinders. The weighted
    // estimator removes that size bias; the gap at n = 5000 is far above
    // noise.
    sim::SimulationSpec spec;
    spec.n = 5000;
    spec.seed = 77;
    const ObservationSet obs = sim::sample_2d_direct(spec);
    double sup = 0.0;
    for (int i = 1; i <= 120; ++i) {
        const double h = 6.0 * static_cast<double>(i) / 120.0;
        sup = std::max(sup, std::abs(height_cdf_weighted(obs, h) -
                                     height_cdf_unweighted(obs, h)));
    }
    const double three_se = 3.0 * std::sqrt(0.25 / static_cast<double>(spec.n));
    CHECK(sup > three_se);
    CHECK(sup > 0.03);
    CHECK(sup < 2.0 * oracle::kHeightCdfBiasGap);
}

TEST_CASE("moments for a single observation") {
    const MomentSet m = moments(single(1.0, 1.0));
    CHECK(m.radius == doctest::Approx(std::acos(-1.0) / 2.0).epsilon(1e-15));
    CHECK(m.height == 1.0);
    CHECK(m.squared_radius == 2.0);
    CHECK(m.m_g_minus == 1.0);
}

TEST_CASE("moments scale coherently in units") {
    Rng rng(10);
    const ObservationSet obs = oracle::random_dataset(rng, 30);
    const double c = 4.0;  // power of two so the scaling is exact
    std::vector<Observation> scaled_rows;
    for (const Observation& o : obs) {
        scaled_rows.push_back(Observation{c * c * o.z, c * o.h});
    }
    const ObservationSet scaled(std::move(scaled_rows));
    const MomentSet base = moments(obs);
    const MomentSet big = moments(scaled);
    CHECK(big.radius == c * base.radius);
    CHECK(big.height == c * base.height);
    CHECK(big.squared_radius == c * c * base.squared_radius);
}

TEST_CASE("moment estimates converge to the model truths") {
    sim::SimulationSpec spec;
    spec.n = 50000;
    spec.seed = 3;
    const ObservationSet obs = sim::sample_2d_direct(spec);
    const MomentSet m = moments(obs);
    const double rate = std::log(static_cast<double>(spec.n)) / static_cast<double>(spec.n);
    const double u4 = std::pow(oracle::kEgInvSqrtZ, 4.0);
    const double pi = std::acos(-1.0);

    const double nu2_radius = (pi / 2.0) * (pi / 2.0) * oracle::kXi0 / u4;
    CHECK(std::abs(m.radius - oracle::kEfSqrtX) < 3.0 * std::sqrt(nu2_radius * rate));

    const double nu2_height =
        (oracle::kXi0 * oracle::kEgInvSqrtZH * oracle::kEgInvSqrtZH -
         2.0 * oracle::kXi1 * oracle::kEgInvSqrtZH * oracle::kEgInvSqrtZ +
         oracle::kXi2 * oracle::kEgInvSqrtZ * oracle::kEgInvSqrtZ) /
        u4;
    CHECK(std::abs(m.height - oracle::kEfHeight) < 3.0 * std::sqrt(nu2_height * rate));

    const double nu2_sq = 4.0 * oracle::kXi0 * oracle::kEgSqrtZ * oracle::kEgSqrtZ / u4;
    CHECK(std::abs(m.squared_radius - oracle::kEfX) < 3.0 * std::sqrt(nu2_sq * rate));

    const double nu2_vol =
        4.0 * pi * pi * oracle::kXi0 * oracle::kEgSqrtZH * oracle::kEgSqrtZH / u4;
    CHECK(std::abs(m.volume - oracle::kEfVolume) < 3.0 * std::sqrt(nu2_vol * rate));

    const double lin = 4.0 * pi * oracle::kEgSqrtZ + pi * pi * oracle::kEgHeight;
    const double nu2_surf = oracle::kXi0 * lin * lin / u4;
    CHECK(std::abs(m.surface_area - oracle::kEfSurface) < 3.0 * std::sqrt(nu2_surf * rate));
}

TEST_CASE("covariance vanishes exactly for constant heights") {
    const ObservationSet obs({{1.3, 2.0}, {0.7, 2.0}, {3.9, 2.0}, {2.2, 2.0}});
    CHECK(covariance_hat(obs) == 0.0);
}

TEST_CASE("covariance is permutation invariant") {
    Rng rng(12);
    const ObservationSet obs = oracle::random_dataset(rng, 50);
    std::vector<Observation> shuffled(obs.begin(), obs.end());
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[3], shuffled[27]);
    const ObservationSet permuted(std::move(shuffled));
    CHECK(covariance_hat(permuted) ==
          doctest::Approx(covariance_hat(obs)).epsilon(1e-12));
}

TEST_CASE("covariance estimate approaches the model truth") {
    sim::SimulationSpec spec;
    spec.n = 50000;
    spec.seed = 14;
    const ObservationSet obs = sim::sample_2d_direct(spec);
    const double rate = std::log(static_cast<double>(spec.n)) / static_cast<double>(spec.n);
    const double tol = 3.0 * std::sqrt(oracle::kTrueNu2 * rate);
    CHECK(std::abs(covariance_hat(obs) - oracle::kTrueCovariance) < tol);
}

TEST_CASE("covariance requires two observations") {
    CHECK_THROWS_AS(covariance_hat(single(1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("parallel grid kernel is bitwise identical to the serial reference") {
    Rng rng(15);
    const ObservationSet obs = oracle::random_dataset(rng, 200);
    for (QuantityKind kind : kAllKinds) {
        const std::vector<double> poles = pole_locations(obs, kind);
        const std::vector<double> grid = log_grid(poles.front() * 0.9, poles.back() * 1.1, 257);
        std::vector<double> par(grid.size());
        std::vector<double> ser(grid.size());
        n_tilde_grid(obs, kind, grid, par);
        n_tilde_grid_serial(obs, kind, grid, ser);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(par[i] == ser[i]);
        }
    }
}
