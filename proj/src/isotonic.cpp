#include "ocm/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ocm/errors.hpp"
#include "ocm/plugin.hpp"
#include "ocm/quadrature.hpp"
#include "ocm/summation.hpp"

namespace ocm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Exact antiderivative of (z - q(h;u))^{-1/2} 1[z > q(h;u)] in u over
// [0, t], via the substitution u = q(h;y). Square-root differences are
// written over their conjugates so nothing cancels for small t.
double u_n_term(QuantityKind kind, double z, double h, double t) {
    const double rz = std::sqrt(z);
    switch (kind) {
        case QuantityKind::SquaredRadius: {
            if (t >= z) {
                return 2.0 * rz;
            }
            return 2.0 * t / (rz + std::sqrt(z - t));
        }
        case QuantityKind::Volume: {
            const double q = t / (kPi * h);
            if (q >= z) {
                return kTwoPi * h * rz;
            }
            return kTwoPi * h * q / (rz + std::sqrt(z - q));
        }
        case QuantityKind::AspectRatio: {
            const double q = (h * t) * (h * t);
            if (q >= z) {
                return 0.5 * kPi / h;
            }
            return std::asin(std::sqrt(q / z)) / h;
        }
        case QuantityKind::SurfaceArea: {
            const double q = q_transform(kind, h, t);
            const double m = std::min(q, z);
            const double sq = (m >= z) ? 0.0 : std::sqrt(z - m);
            return 4.0 * kPi * m / (rz + sq) + kTwoPi * h * std::asin(std::sqrt(m / z));
        }
    }
    throw std::logic_error("u_n_term: bad enum value");
}

// z - q(h; T - s^2) with T = p(h; z), written without cancellation; the
// quadrature route integrates 2s / sqrt of this over s.
double z_minus_q_near_pole(QuantityKind kind, double z, double h, double pole, double s) {
    switch (kind) {
        case QuantityKind::SquaredRadius:
            return s * s;
        case QuantityKind::Volume:
            return s * s / (kPi * h);
        case QuantityKind::AspectRatio: {
            // z - (h(T - s^2))^2 with hT = sqrt(z).
            const double rz = std::sqrt(z);
            return h * s * s * (2.0 * rz - h * s * s);
        }
        case QuantityKind::SurfaceArea: {
            const double b = 0.5 * h + std::sqrt(z);
            const double r = std::sqrt(b * b - s * s / kTwoPi);
            return (s * s / kTwoPi) * (r + b - h) / (r + b);
        }
    }
    (void)pole;
    throw std::logic_error("z_minus_q_near_pole: bad enum value");
}

std::vector<double> distinct_poles(const ObservationSet& obs, QuantityKind kind) {
    std::vector<double> poles = pole_locations(obs, kind);
    poles.erase(std::unique(poles.begin(), poles.end()), poles.end());
    return poles;
}

}  // namespace

MonotoneCurve::MonotoneCurve(std::vector<double> knots, std::vector<double> values, double tail)
    : knots_(std::move(knots)), values_(std::move(values)), tail_(tail) {
    if (knots_.empty() || values_.size() + 1 != knots_.size()) {
        throw std::invalid_argument("MonotoneCurve: need one more knot than values");
    }
    if (!std::is_sorted(knots_.begin(), knots_.end())) {
        throw std::invalid_argument("MonotoneCurve: knots must be sorted");
    }
}

double MonotoneCurve::operator()(double t) const {
    if (values_.empty() || t >= knots_.back()) {
        return tail_;
    }
    if (t < knots_.front()) {
        return values_.front();
    }
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t seg = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return values_[seg];
}

double u_n(const ObservationSet& obs, QuantityKind kind, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("u_n: requires t >= 0");
    }
    CompensatedSum acc;
    for (const Observation& o : obs) {
        acc.add(u_n_term(kind, o.z, o.h, t));
    }
    return acc.value() / static_cast<double>(obs.size());
}

double u_n_quadrature(const ObservationSet& obs, QuantityKind kind, double t, double abs_tol) {
    if (!(t >= 0.0)) {
        throw std::domain_error("u_n_quadrature: requires t >= 0");
    }
    QuadratureOptions opt;
    opt.abs_tol = abs_tol;
    CompensatedSum acc;
    for (const Observation& o : obs) {
        const double pole = p_transform(kind, o.h, o.z);
        const double upper = std::min(t, pole);
        if (upper <= 0.0) {
            continue;
        }
        // u = pole - s^2 maps [0, upper] to s in [sqrt(pole-upper), sqrt(pole)]
        // and removes the inverse-square-root endpoint singularity.
        const double s_lo = std::sqrt(pole - upper);
        const double s_hi = std::sqrt(pole);
        const double z = o.z;
        const double h = o.h;
        acc.add(integrate_gk15(
            [&](double s) {
                return 2.0 * s / std::sqrt(z_minus_q_near_pole(kind, z, h, pole, s));
            },
            s_lo, s_hi, opt));
    }
    return acc.value() / static_cast<double>(obs.size());
}

void u_n_grid_serial(const ObservationSet& obs, QuantityKind kind,
                     std::span<const double> ts, std::span<double> out) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
        out[j] = u_n(obs, kind, ts[j]);
    }
}

void u_n_grid(const ObservationSet& obs, QuantityKind kind,
              std::span<const double> ts, std::span<double> out) {
    const std::int64_t m = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < m; ++j) {
        out[j] = u_n(obs, kind, ts[j]);
    }
}

IntegratedCurve integrate_n_tilde(const ObservationSet& obs, QuantityKind kind,
                                  int refine, UnMethod method) {
    if (refine < 0) {
        throw std::invalid_argument("integrate_n_tilde: refine must be >= 0");
    }
    const std::vector<double> poles = distinct_poles(obs, kind);

    std::vector<double> grid;
    grid.reserve(1 + poles.size() * (1 + static_cast<std::size_t>(refine)));
    grid.push_back(0.0);
    double prev = 0.0;
    for (double pole : poles) {
        const double gap = pole - prev;
        // Ascending within the interval: midpoint first, then points
        // clustering geometrically toward the pole (the steep end).
        for (int j = 1; j <= refine; ++j) {
            const double pt = pole - gap * std::ldexp(1.0, -j);
            if (pt > prev && pt < pole) {
                grid.push_back(pt);
            }
        }
        grid.push_back(pole);
        prev = pole;
    }
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    IntegratedCurve curve;
    curve.kind = kind;
    curve.values.resize(grid.size());
    if (method == UnMethod::kClosedForm) {
        u_n_grid(obs, kind, grid, curve.values);
    } else {
        const std::int64_t m = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t j = 0; j < m; ++j) {
            curve.values[j] = u_n_quadrature(obs, kind, grid[j]);
        }
    }
    curve.breakpoints = std::move(grid);
    return curve;
}

MonotoneCurve least_concave_majorant(const IntegratedCurve& curve) {
    const std::vector<double>& t = curve.breakpoints;
    const std::vector<double>& u = curve.values;
    if (t.size() < 2 || t.size() != u.size()) {
        throw std::invalid_argument("least_concave_majorant: need at least two grid points");
    }

    // Upper hull by monotone chain; a kept vertex must strictly decrease
    // the chord slope.
    std::vector<std::size_t> hull;
    hull.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull[hull.size() - 1];
            if ((u[b] - u[a]) * (t[i] - t[b]) <= (u[i] - u[b]) * (t[b] - t[a])) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(i);
    }

    std::vector<double> knots(hull.size());
    std::vector<double> slopes(hull.size() - 1);
    for (std::size_t k = 0; k < hull.size(); ++k) {
        knots[k] = t[hull[k]];
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        slopes[k] = (u[hull[k + 1]] - u[hull[k]]) / (knots[k + 1] - knots[k]);
    }
    // Division rounding can break strict ordering by an ulp; restore the
    // hard monotonicity guarantee.
    for (std::size_t k = 1; k < slopes.size(); ++k) {
        slopes[k] = std::min(slopes[k], slopes[k - 1]);
    }
    for (double& s : slopes) {
        s = std::max(s, 0.0);
    }
    return MonotoneCurve(std::move(knots), std::move(slopes), 0.0);
}

MonotoneCurve isotonic_n_hat(const ObservationSet& obs, QuantityKind kind, int refine) {
    return least_concave_majorant(integrate_n_tilde(obs, kind, refine));
}

double n_hat(const ObservationSet& obs, QuantityKind kind, double t, int refine) {
    if (!(t >= 0.0)) {
        throw std::domain_error("n_hat: requires t >= 0");
    }
    return isotonic_n_hat(obs, kind, refine)(t);
}

MonotoneCurve isotonic_cdf(const ObservationSet& obs, QuantityKind kind,
                           std::span<const double> grid, int refine) {
    if (grid.empty()) {
        throw std::invalid_argument("isotonic_cdf: empty grid");
    }
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw std::invalid_argument("isotonic_cdf: grid must be ascending");
    }
    const MonotoneCurve nhat = isotonic_n_hat(obs, kind, refine);
    const double n0 = nhat.values().empty() ? nhat.tail() : nhat.values()[0];
    std::vector<double> knots(grid.begin(), grid.end());
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        values[j] = 1.0 - nhat(grid[j]) / n0;
    }
    const double tail = values.back();
    knots.push_back(knots.back() + 1.0);  // sentinel so every grid point owns a segment
    return MonotoneCurve(std::move(knots), std::move(values), tail);
}

}  // namespace ocm
