#include "ocm/plugin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ocm/errors.hpp"
#include "ocm/summation.hpp"

namespace ocm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;
}  // namespace

double n_tilde(const ObservationSet& obs, QuantityKind kind, double t) {
    CompensatedSum acc;
    for (const Observation& o : obs) {
        const double d = o.z - q_transform(kind, o.h, t);
        if (d > 0.0) {
            acc.add(1.0 / std::sqrt(d));
        } else if (d == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return acc.value() / static_cast<double>(obs.size());
}

bool n_tilde_has_pole(const ObservationSet& obs, QuantityKind kind, double t) {
    for (const Observation& o : obs) {
        if (o.z == q_transform(kind, o.h, t)) {
            return true;
        }
    }
    return false;
}

void n_tilde_grid_serial(const ObservationSet& obs, QuantityKind kind,
                         std::span<const double> ts, std::span<double> out) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
        out[j] = n_tilde(obs, kind, ts[j]);
    }
}

void n_tilde_grid(const ObservationSet& obs, QuantityKind kind,
                  std::span<const double> ts, std::span<double> out) {
    const std::int64_t m = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < m; ++j) {
        out[j] = n_tilde(obs, kind, ts[j]);
    }
}

std::vector<PluginCdfPoint> plugin_cdf(const ObservationSet& obs, QuantityKind kind,
                                       std::span<const double> grid) {
    const double n0 = n_tilde(obs, kind, 0.0);
    std::vector<double> values(grid.size());
    n_tilde_grid(obs, kind, grid, values);
    std::vector<PluginCdfPoint> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (std::isinf(values[j])) {
            throw PoleError(grid[j]);
        }
        out[j] = PluginCdfPoint{grid[j], 1.0 - values[j] / n0, values[j]};
    }
    return out;
}

double height_cdf_weighted(const ObservationSet& obs, double h) {
    CompensatedSum num;
    CompensatedSum den;
    for (const Observation& o : obs) {
        const double w = 1.0 / std::sqrt(o.z);
        den.add(w);
        if (o.h < h) {
            num.add(w);
        }
    }
    return num.value() / den.value();
}

double height_cdf_unweighted(const ObservationSet& obs, double h) {
    std::size_t count = 0;
    for (const Observation& o : obs) {
        if (o.h <= h) {
            ++count;
        }
    }
    return static_cast<double>(count) / static_cast<double>(obs.size());
}

MomentSet moments(const ObservationSet& obs) {
    CompensatedSum sw;   // sum of Z^{-1/2}
    CompensatedSum ss;   // sum of Z^{1/2}
    CompensatedSum sh;   // sum of H
    CompensatedSum ssh;  // sum of Z^{1/2} H
    for (const Observation& o : obs) {
        const double r = std::sqrt(o.z);
        sw.add(1.0 / r);
        ss.add(r);
        sh.add(o.h);
        ssh.add(r * o.h);
    }
    CompensatedSum swh;  // sum of Z^{-1/2} H
    for (const Observation& o : obs) {
        swh.add(o.h / std::sqrt(o.z));
    }
    const double n = static_cast<double>(obs.size());
    const double sum_w = sw.value();
    MomentSet m;
    m.m_g_minus = sum_w / n;
    m.radius = kHalfPi / m.m_g_minus;
    m.squared_radius = 2.0 * ss.value() / sum_w;
    m.height = swh.value() / sum_w;
    m.volume = 2.0 * kPi * ssh.value() / sum_w;
    m.surface_area = 2.0 * kPi * (2.0 * ss.value() / sum_w + kHalfPi * sh.value() / sum_w);
    return m;
}

double covariance_hat(const ObservationSet& obs) {
    if (obs.size() < 2) {
        throw std::invalid_argument("covariance_hat: requires n >= 2");
    }
    CompensatedSum sw;
    CompensatedSum sh;
    CompensatedSum swh;
    for (const Observation& o : obs) {
        const double w = 1.0 / std::sqrt(o.z);
        sw.add(w);
        sh.add(o.h);
        swh.add(w * o.h);
    }
    const double n = static_cast<double>(obs.size());
    const double sum_w = sw.value();
    // (pi/2) [ sum(H)/sum(W) - (sum(WH)/sum(W)) / (sum(W)/n) ] grouped over
    // the common denominator sum(W)^2; cancels exactly for constant H.
    return kHalfPi * (sh.value() * sum_w - n * swh.value()) / (sum_w * sum_w);
}

std::vector<double> pole_locations(const ObservationSet& obs, QuantityKind kind) {
    std::vector<double> poles;
    poles.reserve(obs.size());
    for (const Observation& o : obs) {
        poles.push_back(p_transform(kind, o.h, o.z));
    }
    std::sort(poles.begin(), poles.end());
    return poles;
}

}  // namespace ocm
