#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ocm/cli.hpp"
#include "ocm/errors.hpp"

namespace {

// "auto" or min:max:points:lin|log
ocm::cli::GridSpec parse_grid(const std::string& text) {
    ocm::cli::GridSpec grid;
    if (text == "auto") {
        return grid;
    }
    std::istringstream in(text);
    std::string min_s, max_s, points_s, spacing;
    if (!std::getline(in, min_s, ':') || !std::getline(in, max_s, ':') ||
        !std::getline(in, points_s, ':') || !std::getline(in, spacing)) {
        throw ocm::ValidationError("--grid expects 'auto' or MIN:MAX:POINTS:lin|log");
    }
    grid.automatic = false;
    grid.min = std::stod(min_s);
    grid.max = std::stod(max_s);
    grid.points = static_cast<std::size_t>(std::stoul(points_s));
    if (spacing == "lin") {
        grid.log_spacing = false;
    } else if (spacing == "log") {
        grid.log_spacing = true;
    } else {
        throw ocm::ValidationError("--grid spacing must be lin or log");
    }
    return grid;
}

std::vector<ocm::cli::OutputKind> parse_kinds(const std::string& csv) {
    std::vector<ocm::cli::OutputKind> kinds;
    std::istringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) {
            kinds.push_back(ocm::cli::parse_output_kind(token));
        }
    }
    if (kinds.empty()) {
        throw ocm::ValidationError("--kinds must name at least one quantity");
    }
    return kinds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric 3D size-distribution estimation for oriented cylinders "
                 "observed as rectangles on a cut plane"};
    app.require_subcommand(1);

    ocm::cli::RunConfig config;
    std::string schema = "z";
    std::string kinds = "vol,surf,ratio,sqradius,height";
    std::string grid = "auto";
    std::string mode = "direct";

    CLI::App* est = app.add_subcommand("estimate", "Estimate CDFs, moments and covariance "
                                                   "from an observation file");
    est->add_option("--input", config.input, "CSV file of observations")->required();
    est->add_option("--schema", schema, "Input columns: width (width,height) or z (z,h)")
        ->check(CLI::IsMember({"width", "z"}));
    est->add_option("--kinds", kinds, "Comma list of vol,surf,ratio,sqradius,height");
    est->add_option("--grid", grid, "'auto' or MIN:MAX:POINTS:lin|log");
    est->add_option("--cb", config.c_b, "Bandwidth constant c_b (window c_b*median(Z)*n^-1/3)");
    est->add_option("--out", config.out_dir, "Output directory")->required();

    CLI::App* simc = app.add_subcommand("simulate", "Write a synthetic observation CSV from "
                                                    "the worked-example model");
    simc->add_option("--n", config.n, "Number of observations");
    simc->add_option("--seed", config.seed, "RNG seed");
    simc->add_option("--mode", mode, "direct (observable densities) or slice (geometric)")
        ->check(CLI::IsMember({"direct", "slice"}));
    simc->add_option("--out", config.out_file, "Output CSV path")->required();

    CLI::App* tab = app.add_subcommand("table3", "Run the covariance experiment and write "
                                                 "its report");
    tab->add_option("--replicates", config.replicates, "Replicate runs per sample size");
    tab->add_option("--seed", config.seed, "RNG seed");
    tab->add_option("--out", config.out_file, "Output TSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        config.schema = schema == "width" ? ocm::cli::InputSchema::kWidthHeight
                                          : ocm::cli::InputSchema::kZH;
        config.kinds = parse_kinds(kinds);
        config.grid = parse_grid(grid);
        config.mode = mode == "slice" ? ocm::sim::SimulationSpec::Mode::kSlice3D
                                      : ocm::sim::SimulationSpec::Mode::kDirect2D;
        if (est->parsed()) {
            ocm::cli::cmd_estimate(config);
        } else if (simc->parsed()) {
            ocm::cli::cmd_simulate(config);
        } else if (tab->parsed()) {
            ocm::cli::cmd_table3(config);
        }
    } catch (const ocm::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ocm::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
