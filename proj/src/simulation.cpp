#include "ocm/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "ocm/asymptotics.hpp"
#include "ocm/errors.hpp"
#include "ocm/plugin.hpp"
#include "ocm/quadrature.hpp"
#include "ocm/special.hpp"
#include "ocm/summation.hpp"

namespace ocm::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;

// Stream salts so the different spec-level entry points use unrelated
// substreams of the same master seed.
constexpr std::uint64_t kSalt3D = 0xA2F3C1D4E5B60718ULL;
constexpr std::uint64_t kSaltDirect = 0x1B2C3D4E5F607182ULL;
constexpr std::uint64_t kSaltSlice = 0xC0FFEE1234567890ULL;

// Acceptance probability for the upper-branch height rejection sampler:
// target density over the Gamma(1/2) envelope, in (0, 1) for all w.
double branch2_acceptance(double w) {
    if (w > 600.0) {
        return 1.0 - 1.0 / w + 0.375 / (w * w);
    }
    const double s = std::sqrt(w);
    return (0.5 - w) * s * kSqrtPi * std::exp(w) * std::erfc(s) + w;
}

double triangular_height(Rng& rng, double x) {
    return x * (1.0 - std::sqrt(1.0 - rng.uniform()));
}

}  // namespace

double mean_radius(const std::vector<CylinderSample>& cyls) {
    CompensatedSum acc;
    for (const CylinderSample& c : cyls) {
        acc.add(std::sqrt(c.x));
    }
    return acc.value() / static_cast<double>(cyls.size());
}

double gz_density(double z) {
    if (z < 0.0) {
        return 0.0;
    }
    return (4.0 / 15.0) * (z * z + z + 0.75) * std::exp(-z);
}

double gz_cdf(double z) {
    if (z <= 0.0) {
        return 0.0;
    }
    return 1.0 - std::exp(-z) * (4.0 * z * z + 12.0 * z + 15.0) / 15.0;
}

double gz_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("gz_quantile: requires u in (0,1)");
    }
    // Solve g(z) = ln P(z) - z - ln(15(1-u)) = 0 with P(z) = 4z^2+12z+15.
    // g is strictly decreasing (P'/P < 1 for z >= 0), so the root is
    // bracketed once g changes sign; Newton with bisection safeguard.
    const double target = std::log1p(-u) + std::log(15.0);
    auto g = [&](double z) {
        const double p = (4.0 * z + 12.0) * z + 15.0;
        return std::log(p) - z - target;
    };
    double lo = std::max(0.0, -std::log1p(-u));  // g(lo) >= 0
    double hi = lo + 4.0;
    while (g(hi) > 0.0) {
        lo = hi;
        hi += 4.0;
    }
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < 100; ++i) {
        const double p = (4.0 * z + 12.0) * z + 15.0;
        const double gz = std::log(p) - z - target;
        (gz > 0.0 ? lo : hi) = z;
        const double dg = (8.0 * z + 12.0) / p - 1.0;
        double next = z - gz / dg;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - z) < 1e-15 * (1.0 + z)) {
            z = next;
            break;
        }
        z = next;
    }
    return z;
}

double conditional_height_density(double h, double z) {
    if (h <= 0.0) {
        return 0.0;
    }
    const double norm = z * z + z + 0.75;
    if (h < z) {
        return 2.0 * (0.5 + z - h) / norm;
    }
    const double w = h - z;
    const double psi = (0.5 - w) * upper_incomplete_gamma_half(w) +
                       std::sqrt(w) * std::exp(-w);
    return 2.0 * psi / (kSqrtPi * norm);
}

double joint_density_2d(double z, double h) {
    return gz_density(z) * conditional_height_density(h, z);
}

double joint_density_3d(double x, double h) {
    if (h <= 0.0 || h >= x) {
        return 0.0;
    }
    return (x - h) * std::exp(-x);
}

double volume_cdf(double v) {
    if (v <= 0.0) {
        return 0.0;
    }
    const double s = std::sqrt(v / kPi);
    const double bracket = 1.0 + s - v / (2.0 * kPi) + 0.5 * s * s * s;
    return 1.0 - bracket * std::exp(-s) +
           v * v / (2.0 * kPi * kPi) * exponential_integral_e1(s);
}

std::vector<CylinderSample> sample_3d(Rng& rng, std::size_t n) {
    std::vector<CylinderSample> out;
    out.reserve(n);
    while (out.size() < n) {
        const double x = rng.gamma3();
        const double h = triangular_height(rng, x);
        if (x > 0.0 && h > 0.0) {
            out.push_back(CylinderSample{x, h});
        }
    }
    return out;
}

std::vector<CylinderSample> sample_3d(const SimulationSpec& spec) {
    Rng rng = Rng::for_replicate(spec.seed ^ kSalt3D, 0);
    return sample_3d(rng, spec.n);
}

double sample_gz(Rng& rng) {
    return gz_quantile(rng.uniform());
}

double sample_height_given_z(Rng& rng, double z) {
    const double norm = z * z + z + 0.75;
    const double p_lower = z * (1.0 + z) / norm;
    if (rng.uniform() < p_lower) {
        // Linear density 2(1/2+z-h)/... on [0, z]; exact inversion.
        const double u = rng.uniform();
        const double a = 0.5 + z;
        const double h = a - std::sqrt(a * a - u * z * (1.0 + z));
        return h > 0.0 ? h : sample_height_given_z(rng, z);
    }
    // Upper branch: h = z + w with w from the tilted tail density, by
    // rejection against Gamma(1/2). Expected number of trials is 8/3.
    for (int trial = 0; trial < 10000; ++trial) {
        const double g = rng.normal();
        const double w = 0.5 * g * g;
        if (w <= 0.0) {
            continue;
        }
        if (rng.uniform() <= branch2_acceptance(w)) {
            return z + w;
        }
    }
    throw NumericalError("sample_height_given_z: rejection efficiency collapsed");
}

ObservationSet sample_2d_direct(Rng& rng, std::size_t n) {
    std::vector<Observation> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sample_gz(rng);
        const double h = sample_height_given_z(rng, z);
        out.push_back(Observation{z, h});
    }
    return ObservationSet(std::move(out));
}

ObservationSet sample_2d_direct(const SimulationSpec& spec) {
    Rng rng = Rng::for_replicate(spec.seed ^ kSaltDirect, 0);
    return sample_2d_direct(rng, spec.n);
}

SliceWorld default_slice_world() {
    const double radius_q999 = std::sqrt(gamma3_quantile(0.999));
    const double side = 20.0 * radius_q999;
    return SliceWorld{side, 0.5 * side};
}

ObservationSet slice_oracle(const SimulationSpec& spec) {
    Rng rng = Rng::for_replicate(spec.seed ^ kSaltSlice, 0);
    return slice_sample(rng, default_slice_world(), spec.n, [](Rng& r) {
        const double x = r.gamma3();
        return CylinderSample{x, triangular_height(r, x)};
    });
}

// ---- quadrature truths ------------------------------------------------------

namespace {

constexpr double kXCut = 80.0;  // e^{-80} tail, far below quadrature tolerance
constexpr double kWCut = 80.0;

// Inner integrals are resolved two decades tighter than the outer ones so
// the outer error estimates are not polluted by inner noise.
QuadratureOptions inner_opt() {
    QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    return opt;
}

QuadratureOptions outer_opt() {
    QuadratureOptions opt;
    opt.abs_tol = 1e-9;
    return opt;
}

// E_f[x^alpha h^beta] by nested quadrature over the cylinder density,
// with x = s^2 softening the x^{-1/2} factors.
double f_moment(double alpha, double beta) {
    return integrate_gk15(
        [&](double s) {
            const double x = s * s;
            if (x <= 0.0) {
                return 0.0;
            }
            const double inner = integrate_gk15(
                [&](double h) { return std::pow(h, beta) * joint_density_3d(x, h); }, 0.0,
                x, inner_opt());
            return 2.0 * s * std::pow(x, alpha) * inner;
        },
        0.0, std::sqrt(kXCut), outer_opt());
}

// Mean of h^j under the conditional observable law at fixed z. The lower
// branch is polynomial; the upper branch integrates over w = h - z.
double conditional_h_moment(double z, int j) {
    auto hj = [j](double h) {
        return j == 0 ? 1.0 : (j == 1 ? h : h * h);
    };
    double lower = 0.0;
    if (z > 0.0) {
        lower = integrate_gk15(
            [&](double h) { return hj(h) * conditional_height_density(h, z); }, 0.0, z,
            inner_opt());
    }
    const double upper = integrate_gk15(
        [&](double r) {
            const double w = r * r;
            return 2.0 * r * hj(z + w) * conditional_height_density(z + w, z);
        },
        0.0, std::sqrt(kWCut), inner_opt());
    return lower + upper;
}

// E_g[z^alpha h^j] over the observable density, z = s^2 substitution.
double g_moment(double alpha, int j) {
    return integrate_gk15(
        [&](double s) {
            const double z = s * s;
            const double w = gz_density(z) * conditional_h_moment(z, j);
            return 2.0 * s * std::pow(z, alpha) * w;
        },
        0.0, std::sqrt(kXCut), outer_opt());
}

// xi_g^j = gz(0) * E[h^j | Z = 0].
double xi_truth(int j) {
    return gz_density(0.0) * conditional_h_moment(0.0, j);
}

}  // namespace

double true_covariance() {
    const double mean_w = g_moment(-0.5, 0);   // E_g[Z^{-1/2}]
    const double mean_wh = g_moment(-0.5, 1);  // E_g[Z^{-1/2} H]
    const double mean_h = g_moment(0.0, 1);    // E_g[H]
    const double half_pi = 0.5 * kPi;
    return half_pi * mean_h / mean_w - half_pi * mean_wh / (mean_w * mean_w);
}

TrueNu2 true_nu2() {
    // Observable side: delta-method variance in moments of g.
    const double u = g_moment(-0.5, 0);
    const double v = g_moment(-0.5, 1);
    const double w = g_moment(0.0, 1);
    const double xi0 = xi_truth(0);
    const double xi1 = xi_truth(1);
    const double xi2 = xi_truth(2);
    const double ratio = v / u;
    const double braces = xi0 * (4.0 * ratio * ratio - 4.0 * ratio * w + w * w) +
                          2.0 * xi1 * (w - ratio) + xi2;
    const double observable = 0.25 * kPi * kPi * braces / (u * u * u * u);

    // Cylinder side: the same variance pushed through the cross-moment
    // identities to moments of f.
    const double a = f_moment(0.5, 0.0);
    const double b = f_moment(-0.5, 0.0);
    const double c = f_moment(0.0, 1.0);
    const double d = f_moment(0.5, 1.0);
    const double e = f_moment(-0.5, 1.0);
    const double f2 = f_moment(-0.5, 2.0);
    const double cylinder =
        (2.0 * a / (kPi * kPi)) *
        (b * (4.0 * a * a * c * c - 4.0 * a * c * d + d * d) +
         2.0 * a * e * (d - a * c) + a * a * f2);

    return TrueNu2{observable, cylinder};
}

Table3Report run_table3(const SimulationSpec& spec) {
    if (spec.replicates < 1) {
        throw std::invalid_argument("run_table3: replicates must be >= 1");
    }
    const std::size_t sizes[] = {50, 500, 5000, 50000};
    Table3Report report;
    const BandwidthConfig bw;
    for (std::size_t n : sizes) {
        const std::uint64_t sub_master = splitmix64(spec.seed ^ splitmix64(n));

        Rng single = Rng::for_replicate(sub_master, 0);
        const ObservationSet obs = sample_2d_direct(single, n);
        const double sigma = covariance_hat(obs);
        const double nu2 = var_covariance(obs, bw);
        const double half_width = ci(sigma, nu2, n).half_width;

        std::vector<double> sigmas(spec.replicates);
        const std::int64_t reps = static_cast<std::int64_t>(spec.replicates);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = 0; r < reps; ++r) {
            Rng rng = Rng::for_replicate(sub_master, static_cast<std::uint64_t>(r) + 1);
            sigmas[r] = covariance_hat(sample_2d_direct(rng, n));
        }
        const double mean_sigma = pairwise_sum(sigmas) / static_cast<double>(spec.replicates);
        report.rows.push_back(Table3Row{n, sigma, nu2, half_width, mean_sigma});
    }
    report.true_sigma = true_covariance();
    report.true_nu2 = true_nu2().observable_side;
    return report;
}

}  // namespace ocm::sim
