#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ocm/errors.hpp"
#include "ocm/observations.hpp"
#include "ocm/rng.hpp"
#include "ocm/transforms.hpp"
#include "oracle_helpers.hpp"

using namespace ocm;

namespace {
constexpr double kPi = 3.14159265358979323846;

double random_log(Rng& rng, double lo, double hi) {
    return lo * std::pow(hi / lo, rng.uniform());
}
}  // namespace

TEST_CASE("q_transform branch values") {
    CHECK(q_transform(QuantityKind::Volume, 2.0, 2.0 * kPi) ==
          doctest::Approx(1.0).epsilon(1e-14));
    for (QuantityKind kind : kAllKinds) {
        CHECK(q_transform(kind, 1.0, 0.0) == 0.0);
    }
    // Surface-area threshold tends to [sqrt(t/(2 pi))]^2 as h -> 0.
    CHECK(q_transform(QuantityKind::SurfaceArea, 1e-8, 2.0 * kPi) ==
          doctest::Approx(1.0).epsilon(1e-7));
    CHECK(q_transform(QuantityKind::SquaredRadius, 3.0, 1.75) == 1.75);
    CHECK(q_transform(QuantityKind::AspectRatio, 2.0, 3.0) == doctest::Approx(36.0));
}

TEST_CASE("q_transform rejects bad input") {
    CHECK_THROWS_AS(q_transform(QuantityKind::Volume, 1.0,
                                std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS(q_transform(QuantityKind::Volume,
                                std::numeric_limits<double>::infinity(), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(q_transform(QuantityKind::Volume, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(p_transform(QuantityKind::Volume, 1.0, -1.0), std::domain_error);
}

TEST_CASE("p_transform branch values") {
    CHECK(p_transform(QuantityKind::Volume, 2.0, 1.0) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(p_transform(QuantityKind::AspectRatio, 2.0, 4.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("round trips p(q(t)) and q(p(u)) over random inputs") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const QuantityKind kind = kAllKinds[i % 4];
        const double h = random_log(rng, 0.05, 20.0);
        const double t = random_log(rng, 1e-3, 50.0);
        const double u = random_log(rng, 1e-4, 100.0);
        CHECK(p_transform(kind, h, q_transform(kind, h, t)) ==
              doctest::Approx(t).epsilon(1e-12));
        CHECK(q_transform(kind, h, p_transform(kind, h, u)) ==
              doctest::Approx(u).epsilon(1e-12));
    }
}

TEST_CASE("q_transform is nondecreasing in t") {
    Rng rng(7);
    for (int i = 0; i < 400; ++i) {
        const QuantityKind kind = kAllKinds[i % 4];
        const double h = random_log(rng, 0.05, 20.0);
        double t1 = random_log(rng, 1e-3, 50.0);
        double t2 = random_log(rng, 1e-3, 50.0);
        if (t1 > t2) {
            std::swap(t1, t2);
        }
        CHECK(q_transform(kind, h, t1) <= q_transform(kind, h, t2));
    }
}

TEST_CASE("threshold equivalence T > t iff X > q(H;t)") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const QuantityKind kind = kAllKinds[i % 4];
        const double h = random_log(rng, 0.05, 20.0);
        const double x = random_log(rng, 1e-3, 50.0);
        const double t = random_log(rng, 1e-3, 50.0);
        CHECK((p_transform(kind, h, x) > t) == (x > q_transform(kind, h, t)));
    }
}

TEST_CASE("derivative constant branches") {
    CHECK(p_dot(QuantityKind::Volume, 3.0, 0.5) == doctest::Approx(3.0 * kPi));
    CHECK(q_dot(QuantityKind::Volume, 3.0, 0.5) == doctest::Approx(1.0 / (3.0 * kPi)));
    CHECK(p_dot(QuantityKind::SquaredRadius, 1.7, 0.9) == 1.0);
    CHECK(q_dot(QuantityKind::SquaredRadius, 1.7, 0.9) == 1.0);
}

TEST_CASE("derivative reciprocity p_dot(q(t)) * q_dot(t) = 1") {
    Rng rng(13);
    for (int i = 0; i < 800; ++i) {
        const QuantityKind kind = kAllKinds[i % 4];
        const double h = random_log(rng, 0.05, 20.0);
        const double t = random_log(rng, 1e-3, 50.0);
        const double q = q_transform(kind, h, t);
        if (q == 0.0) {
            continue;
        }
        CHECK(p_dot(kind, h, q) * q_dot(kind, h, t) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("p_dot matches central finite differences") {
    Rng rng(17);
    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    for (int i = 0; i < 200; ++i) {
        const QuantityKind kind = kAllKinds[i % 4];
        const double h = random_log(rng, 0.1, 10.0);
        const double u = random_log(rng, 1e-2, 50.0);
        const double step = u * cbrt_eps;
        const double fd =
            (p_transform(kind, h, u + step) - p_transform(kind, h, u - step)) / (2.0 * step);
        CHECK(p_dot(kind, h, u) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("p_dot singularity at u = 0 is an error for ratio and surface") {
    CHECK_THROWS_AS(p_dot(QuantityKind::AspectRatio, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(p_dot(QuantityKind::SurfaceArea, 1.0, 0.0), std::domain_error);
    CHECK_NOTHROW(p_dot(QuantityKind::SquaredRadius, 1.0, 0.0));
    CHECK_NOTHROW(p_dot(QuantityKind::Volume, 1.0, 0.0));
}

TEST_CASE("surface-area threshold survives catastrophic cancellation") {
    // Reference: the algebraically equivalent conjugate form, evaluated in
    // test code only.
    const double h = 10.0;
    for (double ratio : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        const double s = ratio * h * h;
        const double t = 2.0 * kPi * s;
        const double stable = s / (std::sqrt(h * h / 4.0 + s) + h / 2.0);
        const double expected = stable * stable;
        CHECK(q_transform(QuantityKind::SurfaceArea, h, t) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("validate screens raw observations") {
    {
        const std::vector<Observation> raw = {{1.0, 2.0}};
        const ValidationReport report = validate(raw);
        CHECK(report.set.size() == 1);
        CHECK(report.rejected == 0);
    }
    {
        const std::vector<Observation> raw = {{0.0, 2.0}};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    {
        const std::vector<Observation> raw = {
            {1.0, 1.0},
            {-1.0, 1.0},
            {2.0, std::numeric_limits<double>::quiet_NaN()}};
        const ValidationReport report = validate(raw);
        CHECK(report.set.size() == 1);
        CHECK(report.rejected == 2);
    }
}

TEST_CASE("ObservationSet rejects direct construction from bad data") {
    CHECK_THROWS_AS(ObservationSet(std::vector<Observation>{}), ValidationError);
    CHECK_THROWS_AS(ObservationSet(std::vector<Observation>{{-1.0, 1.0}}),
                    std::invalid_argument);
}
