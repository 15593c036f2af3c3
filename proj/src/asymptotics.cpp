#include "ocm/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "ocm/plugin.hpp"
#include "ocm/summation.hpp"

namespace ocm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;
constexpr double kZ95 = 1.96;

struct ObservableMeans {
    double w;    // mean Z^{-1/2}
    double s;    // mean Z^{1/2}
    double h;    // mean H
    double wh;   // mean Z^{-1/2} H
    double sh;   // mean Z^{1/2} H
};

ObservableMeans observable_means(const ObservationSet& obs) {
    CompensatedSum w, s, h, wh, sh;
    for (const Observation& o : obs) {
        const double r = std::sqrt(o.z);
        w.add(1.0 / r);
        s.add(r);
        h.add(o.h);
        wh.add(o.h / r);
        sh.add(r * o.h);
    }
    const double n = static_cast<double>(obs.size());
    return ObservableMeans{w.value() / n, s.value() / n, h.value() / n,
                           wh.value() / n, sh.value() / n};
}

}  // namespace

double resolve_bandwidth(const BandwidthConfig& bw, const ObservationSet& obs) {
    if (!(bw.c_b > 0.0)) {
        throw std::invalid_argument("resolve_bandwidth: c_b must be > 0");
    }
    const double scale = bw.scale_by_median_z ? obs.median_z() : 1.0;
    return bw.c_b * scale * std::pow(static_cast<double>(obs.size()), -1.0 / 3.0);
}

BoundaryEstimate xi_hat(const ObservationSet& obs, int j, const BandwidthConfig& bw) {
    if (j < 0 || j > 2) {
        throw std::invalid_argument("xi_hat: j must be 0, 1 or 2");
    }
    const double b_n = resolve_bandwidth(bw, obs);
    CompensatedSum acc;
    std::size_t count = 0;
    for (const Observation& o : obs) {
        if (o.z <= b_n) {
            ++count;
            acc.add(j == 0 ? 1.0 : (j == 1 ? o.h : o.h * o.h));
        }
    }
    return BoundaryEstimate{acc.value() / (b_n * static_cast<double>(obs.size())), count};
}

BoundaryEstimate tau_hat(const ObservationSet& obs, QuantityKind kind, double t,
                         const BandwidthConfig& bw) {
    if (!(t >= 0.0)) {
        throw std::domain_error("tau_hat: requires t >= 0");
    }
    const double b_n = resolve_bandwidth(bw, obs);
    std::size_t count = 0;
    for (const Observation& o : obs) {
        if (std::abs(o.z - q_transform(kind, o.h, t)) <= b_n) {
            ++count;
        }
    }
    const double value =
        static_cast<double>(count) / (2.0 * b_n * static_cast<double>(obs.size()));
    return BoundaryEstimate{value, count};
}

double var_covariance(const ObservationSet& obs, const BandwidthConfig& bw) {
    if (obs.size() < 2) {
        throw std::invalid_argument("var_covariance: requires n >= 2");
    }
    const ObservableMeans m = observable_means(obs);
    const double xi0 = xi_hat(obs, 0, bw).value;
    const double xi1 = xi_hat(obs, 1, bw).value;
    const double xi2 = xi_hat(obs, 2, bw).value;
    const double ratio = m.wh / m.w;
    const double braces = xi0 * (4.0 * ratio * ratio - 4.0 * ratio * m.h + m.h * m.h) +
                          2.0 * xi1 * (m.h - ratio) + xi2;
    const double u4 = m.w * m.w * m.w * m.w;
    return kHalfPi * kHalfPi * braces / u4;
}

double var_moment(const ObservationSet& obs, MomentRow row, const BandwidthConfig& bw) {
    const ObservableMeans m = observable_means(obs);
    const double xi0 = xi_hat(obs, 0, bw).value;
    const double u4 = m.w * m.w * m.w * m.w;
    switch (row) {
        case MomentRow::kRadius:
            return kHalfPi * kHalfPi * xi0 / u4;
        case MomentRow::kSquaredRadius:
            return 4.0 * xi0 * m.s * m.s / u4;
        case MomentRow::kHeight: {
            const double xi1 = xi_hat(obs, 1, bw).value;
            const double xi2 = xi_hat(obs, 2, bw).value;
            return (xi0 * m.wh * m.wh - 2.0 * xi1 * m.wh * m.w + xi2 * m.w * m.w) / u4;
        }
        case MomentRow::kVolume:
            return 4.0 * kPi * kPi * xi0 * m.sh * m.sh / u4;
        case MomentRow::kSurfaceArea: {
            const double lin = 4.0 * kPi * m.s + kPi * kPi * m.h;
            return xi0 * lin * lin / u4;
        }
    }
    throw std::logic_error("var_moment: bad enum value");
}

double cdf_variance_kernel(double n0, double nt, double tau0, double gz0) {
    const double n02 = n0 * n0;
    return (n02 * tau0 + nt * nt * gz0) / (n02 * n02);
}

double var_cdf_plugin(const ObservationSet& obs, QuantityKind kind, double t,
                      const BandwidthConfig& bw) {
    const double n0 = n_tilde(obs, kind, 0.0);
    const double nt = n_tilde(obs, kind, t);
    const double tau0 = tau_hat(obs, kind, t, bw).value;
    const double gz0 = xi_hat(obs, 0, bw).value;
    return cdf_variance_kernel(n0, nt, tau0, gz0);
}

double var_cdf_isotonic(const MonotoneCurve& n_hat_curve, const ObservationSet& obs,
                        QuantityKind kind, double t, const BandwidthConfig& bw) {
    const double n0 =
        n_hat_curve.values().empty() ? n_hat_curve.tail() : n_hat_curve.values()[0];
    const double nt = n_hat_curve(t);
    const double tau0 = tau_hat(obs, kind, t, bw).value;
    const double gz0 = xi_hat(obs, 0, bw).value;
    return 0.5 * cdf_variance_kernel(n0, nt, tau0, gz0);
}

double var_cdf_isotonic(const ObservationSet& obs, QuantityKind kind, double t,
                        const BandwidthConfig& bw, int refine) {
    return var_cdf_isotonic(isotonic_n_hat(obs, kind, refine), obs, kind, t, bw);
}

HeightTailEstimates height_boundary_integrals(const ObservationSet& obs, double h,
                                              const BandwidthConfig& bw) {
    if (!(h >= 0.0)) {
        throw std::domain_error("height_boundary_integrals: requires h >= 0");
    }
    const double b_n = resolve_bandwidth(bw, obs);
    std::size_t above = 0;
    std::size_t below = 0;
    for (const Observation& o : obs) {
        if (o.z <= b_n) {
            // Half-open split so the two windows partition the xi^0 window.
            (o.h > h ? above : below) += 1;
        }
    }
    const double denom = b_n * static_cast<double>(obs.size());
    return HeightTailEstimates{
        BoundaryEstimate{static_cast<double>(above) / denom, above},
        BoundaryEstimate{static_cast<double>(below) / denom, below}};
}

double var_height_cdf(const ObservationSet& obs, double h, const BandwidthConfig& bw) {
    const HeightTailEstimates tails = height_boundary_integrals(obs, h, bw);
    const double f_h = height_cdf_weighted(obs, h);
    const double m_g = n_tilde(obs, QuantityKind::SquaredRadius, 0.0);
    return (f_h * tails.above.value + (1.0 - f_h) * tails.below.value) / (m_g * m_g);
}

EstimateWithCI ci(double estimate, double nu2, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("ci: requires n >= 2");
    }
    bool clamped = false;
    if (nu2 < 0.0) {
        nu2 = 0.0;
        clamped = true;
    }
    const double rate = std::log(static_cast<double>(n)) / static_cast<double>(n);
    return EstimateWithCI{estimate, nu2, kZ95 * std::sqrt(nu2 * rate), n, clamped};
}

}  // namespace ocm
