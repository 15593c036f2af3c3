#pragma once

namespace ocm {

/// E1(x) = integral over [x, inf) of exp(-u)/u du, for x > 0.
double exponential_integral_e1(double x);

/// Upper incomplete gamma function of order 1/2:
/// Gamma(1/2, w) = integral over [w, inf) of t^{-1/2} exp(-t) dt.
double upper_incomplete_gamma_half(double w);

/// CDF of the Gamma(3, 1) distribution.
double gamma3_cdf(double x);

/// Quantile of the Gamma(3, 1) distribution, u in (0, 1).
double gamma3_quantile(double u);

}  // namespace ocm
