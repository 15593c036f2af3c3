#include "ocm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ocm/asymptotics.hpp"
#include "ocm/errors.hpp"
#include "ocm/isotonic.hpp"
#include "ocm/plugin.hpp"

namespace ocm::cli {

namespace {

using nlohmann::json;

double interpolated_quantile(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) {
        return sorted[0];
    }
    const double pos = q * static_cast<double>(n - 1);
    const std::size_t i0 = static_cast<std::size_t>(std::floor(pos));
    if (i0 + 1 >= n) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(i0);
    return sorted[i0] + (sorted[i0 + 1] - sorted[i0]) * frac;
}

std::vector<double> spaced_points(double lo, double hi, std::size_t points, bool log_spacing) {
    if (points < 2) {
        throw std::invalid_argument("grid: needs at least 2 points");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("grid: max must exceed min");
    }
    if (log_spacing && !(lo > 0.0)) {
        throw std::invalid_argument("grid: log spacing needs min > 0");
    }
    std::vector<double> grid(points);
    const double a = log_spacing ? std::log(lo) : lo;
    const double b = log_spacing ? std::log(hi) : hi;
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        const double v = a + (b - a) * frac;
        grid[i] = log_spacing ? std::exp(v) : v;
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

// Moves grid points that sit exactly on a pole to the midpoint toward the
// next distinct pole.
void avoid_poles(std::vector<double>& grid, const std::vector<double>& sorted_poles) {
    std::vector<double> distinct = sorted_poles;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    bool touched = false;
    for (double& g : grid) {
        if (!std::binary_search(distinct.begin(), distinct.end(), g)) {
            continue;
        }
        touched = true;
        const auto above = std::upper_bound(distinct.begin(), distinct.end(), g);
        if (above != distinct.end()) {
            g = 0.5 * (g + *above);
        } else {
            const auto below = std::lower_bound(distinct.begin(), distinct.end(), g);
            g = below != distinct.begin() ? 0.5 * (g + *(below - 1)) : 0.5 * g;
        }
        while (std::binary_search(distinct.begin(), distinct.end(), g)) {
            g = std::nextafter(g, std::numeric_limits<double>::infinity());
        }
    }
    if (touched) {
        log_info("grid points collided with plug-in poles; moved to interval midpoints");
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
}

std::vector<double> quantile_window_grid(std::vector<double> sorted_values,
                                         std::size_t points, bool log_spacing) {
    double lo = interpolated_quantile(sorted_values, 0.005);
    double hi = interpolated_quantile(sorted_values, 0.995);
    if (!(hi > lo)) {
        lo = 0.5 * sorted_values.front();
        hi = 1.5 * sorted_values.back();
    }
    return spaced_points(lo, hi, points, log_spacing);
}

std::string kind_token_name(OutputKind kind) {
    switch (kind) {
        case OutputKind::kSquaredRadius: return "squared_radius";
        case OutputKind::kAspectRatio: return "aspect_ratio";
        case OutputKind::kSurfaceArea: return "surface_area";
        case OutputKind::kVolume: return "volume";
        case OutputKind::kHeight: return "height";
    }
    throw std::logic_error("kind_token_name: bad enum");
}

QuantityKind to_quantity_kind(OutputKind kind) {
    switch (kind) {
        case OutputKind::kSquaredRadius: return QuantityKind::SquaredRadius;
        case OutputKind::kAspectRatio: return QuantityKind::AspectRatio;
        case OutputKind::kSurfaceArea: return QuantityKind::SurfaceArea;
        case OutputKind::kVolume: return QuantityKind::Volume;
        case OutputKind::kHeight: break;
    }
    throw std::logic_error("to_quantity_kind: height has no threshold transform");
}

json moment_entry(double estimate, std::optional<double> nu2, std::size_t n) {
    json entry;
    entry["estimate"] = estimate;
    if (nu2.has_value() && n >= 2) {
        const EstimateWithCI e = ci(estimate, *nu2, n);
        entry["nu2"] = e.nu2;
        entry["half_width"] = e.half_width;
        entry["ci"] = {e.lower(), e.upper()};
        if (e.clamped) {
            entry["variance_clamped"] = true;
        }
    } else {
        entry["nu2"] = nullptr;
        entry["half_width"] = nullptr;
        entry["ci"] = nullptr;
    }
    return entry;
}

}  // namespace

OutputKind parse_output_kind(const std::string& token) {
    if (token == "vol") return OutputKind::kVolume;
    if (token == "surf") return OutputKind::kSurfaceArea;
    if (token == "ratio") return OutputKind::kAspectRatio;
    if (token == "sqradius") return OutputKind::kSquaredRadius;
    if (token == "height") return OutputKind::kHeight;
    throw ValidationError("unknown kind '" + token +
                          "' (expected vol,surf,ratio,sqradius,height)");
}

std::vector<double> make_default_grid(const ObservationSet& obs, QuantityKind kind,
                                      std::size_t points) {
    const std::vector<double> poles = pole_locations(obs, kind);
    std::vector<double> grid = quantile_window_grid(poles, points, true);
    avoid_poles(grid, poles);
    return grid;
}

std::vector<double> make_height_grid(const ObservationSet& obs, std::size_t points) {
    std::vector<double> hs;
    hs.reserve(obs.size());
    for (const Observation& o : obs) {
        hs.push_back(o.h);
    }
    std::sort(hs.begin(), hs.end());
    return quantile_window_grid(std::move(hs), points, true);
}

std::vector<double> make_explicit_grid(const GridSpec& spec) {
    return spaced_points(spec.min, spec.max, spec.points, spec.log_spacing);
}

void cmd_estimate(const RunConfig& config) {
    IngestReport report = ingest(config.input, config.schema);
    const ObservationSet& obs = report.set;
    const std::size_t n = obs.size();
    if (report.rejected > 0) {
        std::ostringstream msg;
        msg << "ingest: rejected " << report.rejected << " row(s) at line(s)";
        for (std::size_t line : report.rejected_lines) {
            msg << ' ' << line;
        }
        log_warn(msg.str());
    }

    const BandwidthConfig bw{config.c_b, true};
    const double b_n = resolve_bandwidth(bw, obs);
    std::filesystem::create_directories(config.out_dir);

    json summary;
    summary["n"] = n;
    summary["rejected_rows"] = report.rejected;
    summary["rejected_lines"] = report.rejected_lines;
    summary["bandwidth"] = {{"c_b", config.c_b}, {"b_n", b_n}, {"median_z", obs.median_z()}};

    const MomentSet m = moments(obs);
    const auto var_for = [&](MomentRow row) -> std::optional<double> {
        if (n < 2) {
            return std::nullopt;
        }
        return var_moment(obs, row, bw);
    };
    summary["m_g_minus"] = m.m_g_minus;
    summary["moments"]["radius"] = moment_entry(m.radius, var_for(MomentRow::kRadius), n);
    summary["moments"]["squared_radius"] =
        moment_entry(m.squared_radius, var_for(MomentRow::kSquaredRadius), n);
    summary["moments"]["height"] = moment_entry(m.height, var_for(MomentRow::kHeight), n);
    summary["moments"]["volume"] = moment_entry(m.volume, var_for(MomentRow::kVolume), n);
    summary["moments"]["surface_area"] =
        moment_entry(m.surface_area, var_for(MomentRow::kSurfaceArea), n);

    if (n >= 2) {
        summary["covariance"] =
            moment_entry(covariance_hat(obs), var_covariance(obs, bw), n);
    } else {
        summary["covariance"] = nullptr;
        log_warn("covariance needs n >= 2; skipped");
    }

    const double xi0 = xi_hat(obs, 0, bw).value;
    if (xi_hat(obs, 0, bw).low_count()) {
        log_warn("boundary window [0, b_n] contains no observations; variance "
                 "estimates degenerate to 0");
    }

    for (OutputKind out_kind : config.kinds) {
        const std::string name = kind_token_name(out_kind);
        if (out_kind == OutputKind::kHeight) {
            const std::vector<double> grid = config.grid.automatic
                                                 ? make_height_grid(obs, config.grid.points)
                                                 : make_explicit_grid(config.grid);
            std::ostringstream tsv;
            tsv << "h\tF_weighted\tF_unweighted\tci_lower\tci_upper\n";
            json arr_h = json::array();
            json arr_w = json::array();
            json arr_u = json::array();
            json arr_lo = json::array();
            json arr_hi = json::array();
            for (double h : grid) {
                const double fw = height_cdf_weighted(obs, h);
                const double fu = height_cdf_unweighted(obs, h);
                double lo = fw;
                double hi = fw;
                if (n >= 2) {
                    const EstimateWithCI e = ci(fw, var_height_cdf(obs, h, bw), n);
                    lo = e.lower();
                    hi = e.upper();
                }
                tsv << format_double(h) << '\t' << format_double(fw) << '\t'
                    << format_double(fu) << '\t' << format_double(lo) << '\t'
                    << format_double(hi) << '\n';
                arr_h.push_back(h);
                arr_w.push_back(fw);
                arr_u.push_back(fu);
                arr_lo.push_back(lo);
                arr_hi.push_back(hi);
            }
            const std::filesystem::path tsv_path = config.out_dir / ("cdf_" + name + ".tsv");
            write_text_atomic(tsv_path, tsv.str());
            summary["height_cdf"] = {{"h", arr_h},          {"weighted", arr_w},
                                     {"unweighted", arr_u}, {"ci_lower", arr_lo},
                                     {"ci_upper", arr_hi},  {"tsv", tsv_path.filename().string()}};
            continue;
        }

        const QuantityKind kind = to_quantity_kind(out_kind);
        std::vector<double> grid = config.grid.automatic
                                       ? make_default_grid(obs, kind, config.grid.points)
                                       : make_explicit_grid(config.grid);
        std::vector<PluginCdfPoint> plugin;
        for (int attempt = 0;; ++attempt) {
            try {
                plugin = plugin_cdf(obs, kind, grid);
                break;
            } catch (const PoleError& e) {
                if (attempt >= 8) {
                    throw;
                }
                log_info("grid point " + format_double(e.t()) +
                         " hit a plug-in pole; perturbing");
                avoid_poles(grid, pole_locations(obs, kind));
            }
        }

        const MonotoneCurve nhat = isotonic_n_hat(obs, kind);
        const double n0 = nhat.values().empty() ? nhat.tail() : nhat.values()[0];
        std::ostringstream tsv;
        tsv << "t\tF_plugin\tF_isotonic\tci_lower\tci_upper\n";
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double t = grid[j];
            const double f_iso = 1.0 - nhat(t) / n0;
            double lo = f_iso;
            double hi = f_iso;
            if (n >= 2) {
                const double tau = tau_hat(obs, kind, t, bw).value;
                const double nu2 = 0.5 * cdf_variance_kernel(n0, nhat(t), tau, xi0);
                const EstimateWithCI e = ci(f_iso, nu2, n);
                lo = e.lower();
                hi = e.upper();
            }
            tsv << format_double(t) << '\t' << format_double(plugin[j].f) << '\t'
                << format_double(f_iso) << '\t' << format_double(lo) << '\t'
                << format_double(hi) << '\n';
        }
        const std::filesystem::path tsv_path = config.out_dir / ("cdf_" + name + ".tsv");
        write_text_atomic(tsv_path, tsv.str());
        summary["kinds"][name] = {{"tsv", tsv_path.filename().string()},
                                  {"grid_points", grid.size()},
                                  {"n_hat_zero", n0}};
    }

    write_text_atomic(config.out_dir / "summary.json", summary.dump(2) + "\n");
}

void cmd_simulate(const RunConfig& config) {
    sim::SimulationSpec spec;
    spec.n = config.n;
    spec.seed = config.seed;
    spec.mode = config.mode;
    const ObservationSet obs = spec.mode == sim::SimulationSpec::Mode::kDirect2D
                                   ? sim::sample_2d_direct(spec)
                                   : sim::slice_oracle(spec);
    std::ostringstream csv;
    csv << "z,h\n";
    for (const Observation& o : obs) {
        csv << format_double(o.z) << ',' << format_double(o.h) << '\n';
    }
    write_text_atomic(config.out_file, csv.str());
}

void cmd_table3(const RunConfig& config) {
    sim::SimulationSpec spec;
    spec.seed = config.seed;
    spec.replicates = config.replicates;
    const sim::Table3Report report = sim::run_table3(spec);
    std::ostringstream tsv;
    tsv << "n\tsigma_hat\tnu2_hat\thalf_width\tmean_sigma\n";
    for (const sim::Table3Row& row : report.rows) {
        tsv << row.n << '\t' << format_double(row.sigma_hat) << '\t'
            << format_double(row.nu2_hat) << '\t' << format_double(row.half_width) << '\t'
            << format_double(row.mean_sigma) << '\n';
    }
    tsv << "inf\t" << format_double(report.true_sigma) << '\t'
        << format_double(report.true_nu2) << "\t-\t" << format_double(report.true_sigma)
        << '\n';
    write_text_atomic(config.out_file, tsv.str());
}

}  // namespace ocm::cli
