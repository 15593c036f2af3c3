#include "ocm/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace ocm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

void require_finite(double h, double x, const char* where) {
    if (!std::isfinite(h) || !std::isfinite(x)) {
        throw std::domain_error(std::string(where) + ": non-finite input");
    }
    if (h <= 0.0) {
        throw std::domain_error(std::string(where) + ": height must be > 0");
    }
    if (x < 0.0) {
        throw std::domain_error(std::string(where) + ": second argument must be >= 0");
    }
}

// Surface-area threshold [sqrt(h^2/4 + t/(2pi)) - h/2]^2, kept in the
// literal form. When t/(2pi) << h^2 the subtraction cancels, so the same
// expression is evaluated in extended precision there.
double surface_q(double h, double t) {
    const double s = t / kTwoPi;
    if (s < 1e-3 * h * h) {
        const long double hl = h;
        const long double sl = s;
        const long double d = sqrtl(hl * hl / 4.0L + sl) - hl / 2.0L;
        return static_cast<double>(d * d);
    }
    const double d = std::sqrt(h * h / 4.0 + s) - h / 2.0;
    return d * d;
}

double surface_q_dot(double h, double t) {
    const double s = t / kTwoPi;
    if (s < 1e-3 * h * h) {
        const long double hl = h;
        const long double sl = s;
        const long double r = sqrtl(hl * hl / 4.0L + sl);
        return static_cast<double>((1.0L - hl / (2.0L * r)) / kTwoPi);
    }
    const double r = std::sqrt(h * h / 4.0 + s);
    return (1.0 - h / (2.0 * r)) / kTwoPi;
}

}  // namespace

std::string kind_name(QuantityKind kind) {
    switch (kind) {
        case QuantityKind::SquaredRadius: return "squared_radius";
        case QuantityKind::AspectRatio: return "aspect_ratio";
        case QuantityKind::SurfaceArea: return "surface_area";
        case QuantityKind::Volume: return "volume";
    }
    throw std::logic_error("kind_name: bad enum value");
}

double q_transform(QuantityKind kind, double h, double t) {
    require_finite(h, t, "q_transform");
    switch (kind) {
        case QuantityKind::SquaredRadius:
            return t;
        case QuantityKind::AspectRatio:
            return (h * t) * (h * t);
        case QuantityKind::SurfaceArea:
            return surface_q(h, t);
        case QuantityKind::Volume:
            return t / (kPi * h);
    }
    throw std::logic_error("q_transform: bad enum value");
}

double p_transform(QuantityKind kind, double h, double u) {
    require_finite(h, u, "p_transform");
    switch (kind) {
        case QuantityKind::SquaredRadius:
            return u;
        case QuantityKind::AspectRatio:
            return std::sqrt(u) / h;
        case QuantityKind::SurfaceArea:
            return kTwoPi * (u + h * std::sqrt(u));
        case QuantityKind::Volume:
            return kPi * h * u;
    }
    throw std::logic_error("p_transform: bad enum value");
}

double p_dot(QuantityKind kind, double h, double u) {
    require_finite(h, u, "p_dot");
    switch (kind) {
        case QuantityKind::SquaredRadius:
            return 1.0;
        case QuantityKind::AspectRatio:
            if (u == 0.0) {
                throw std::domain_error("p_dot: aspect-ratio derivative is singular at u = 0");
            }
            return 1.0 / (2.0 * h * std::sqrt(u));
        case QuantityKind::SurfaceArea:
            if (u == 0.0) {
                throw std::domain_error("p_dot: surface-area derivative is singular at u = 0");
            }
            return kTwoPi * (1.0 + h / (2.0 * std::sqrt(u)));
        case QuantityKind::Volume:
            return kPi * h;
    }
    throw std::logic_error("p_dot: bad enum value");
}

double q_dot(QuantityKind kind, double h, double t) {
    require_finite(h, t, "q_dot");
    switch (kind) {
        case QuantityKind::SquaredRadius:
            return 1.0;
        case QuantityKind::AspectRatio:
            return 2.0 * h * h * t;
        case QuantityKind::SurfaceArea:
            return surface_q_dot(h, t);
        case QuantityKind::Volume:
            return 1.0 / (kPi * h);
    }
    throw std::logic_error("q_dot: bad enum value");
}

}  // namespace ocm
