#pragma once

#include <string>

namespace ocm {

/// 3D quantity of interest for an oriented cylinder with squared radius x
/// and height h:
///   SquaredRadius  T = x
///   AspectRatio    T = sqrt(x)/h
///   SurfaceArea    T = 2*pi*(x + sqrt(x)*h)
///   Volume         T = pi*x*h
enum class QuantityKind {
    SquaredRadius,
    AspectRatio,
    SurfaceArea,
    Volume,
};

inline constexpr QuantityKind kAllKinds[] = {
    QuantityKind::SquaredRadius,
    QuantityKind::AspectRatio,
    QuantityKind::SurfaceArea,
    QuantityKind::Volume,
};

std::string kind_name(QuantityKind kind);

/// Threshold transform q(h;t): the quantity of interest exceeds t exactly
/// when the squared radius exceeds q(h;t). Nondecreasing in t, q(h;0) = 0.
/// Throws std::domain_error on non-finite input or h <= 0, t < 0.
double q_transform(QuantityKind kind, double h, double t);

/// Inverse of q_transform in the second argument: p(h; q(h;t)) = t.
/// Throws std::domain_error on non-finite input or h <= 0, u < 0.
double p_transform(QuantityKind kind, double h, double u);

/// Partial derivative of p_transform with respect to u. For AspectRatio and
/// SurfaceArea the derivative diverges as u -> 0; u = 0 throws
/// std::domain_error for those kinds instead of returning infinity.
double p_dot(QuantityKind kind, double h, double u);

/// Partial derivative of q_transform with respect to t. Satisfies
/// p_dot(h; q(h;t)) * q_dot(h;t) = 1 wherever both are defined.
double q_dot(QuantityKind kind, double h, double t);

}  // namespace ocm
