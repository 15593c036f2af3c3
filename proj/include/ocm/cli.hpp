#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ocm/io.hpp"
#include "ocm/observations.hpp"
#include "ocm/simulation.hpp"
#include "ocm/transforms.hpp"

namespace ocm::cli {

/// Evaluation grid request. `automatic` places `points` log-spaced values
/// between the 0.5% and 99.5% empirical quantiles of the pole locations
/// p(H_i; Z_i) of the requested kind.
struct GridSpec {
    bool automatic = true;
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 256;
    bool log_spacing = true;
};

/// Quantities the estimate command can emit. "height" selects the height
/// CDF estimators; the others select a q-transform kind.
enum class OutputKind {
    kSquaredRadius,
    kAspectRatio,
    kSurfaceArea,
    kVolume,
    kHeight,
};

OutputKind parse_output_kind(const std::string& token);  // vol,surf,ratio,sqradius,height

struct RunConfig {
    // estimate
    std::filesystem::path input;
    InputSchema schema = InputSchema::kZH;
    std::vector<OutputKind> kinds = {OutputKind::kSquaredRadius, OutputKind::kAspectRatio,
                                     OutputKind::kSurfaceArea, OutputKind::kVolume,
                                     OutputKind::kHeight};
    GridSpec grid;
    double c_b = 1.0;
    std::filesystem::path out_dir;

    // simulate / table3
    std::size_t n = 500;
    std::uint64_t seed = 1;
    sim::SimulationSpec::Mode mode = sim::SimulationSpec::Mode::kDirect2D;
    std::size_t replicates = 1000;
    std::filesystem::path out_file;
};

/// Default evaluation grid for one kind (see GridSpec). Grid points that
/// collide exactly with a pole are moved to the midpoint toward the next
/// distinct pole.
std::vector<double> make_default_grid(const ObservationSet& obs, QuantityKind kind,
                                      std::size_t points);

/// Same policy over the observed heights, for the height-CDF grid.
std::vector<double> make_height_grid(const ObservationSet& obs, std::size_t points);

/// Explicit grid from a GridSpec (automatic=false).
std::vector<double> make_explicit_grid(const GridSpec& spec);

/// Runs the estimation pipeline: per-kind CDF tables (TSV) and a JSON
/// summary with moments, covariance and height CDFs, all with confidence
/// information. Files are written atomically under out_dir.
void cmd_estimate(const RunConfig& config);

/// Writes a synthetic observation CSV (header z,h) from the worked-example
/// model, either the direct observable sampler or the geometric slicing
/// sampler.
void cmd_simulate(const RunConfig& config);

/// Writes the covariance-experiment report as TSV (columns n, sigma_hat,
/// nu2_hat, half_width, mean_sigma; final row holds the quadrature truth).
void cmd_table3(const RunConfig& config);

}  // namespace ocm::cli
