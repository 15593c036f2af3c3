// Timing comparison of the OpenMP grid kernels against their serial
// references, on worked-example data.

#include <benchmark/benchmark.h>

#include <vector>

#include "ocm/isotonic.hpp"
#include "ocm/plugin.hpp"
#include "ocm/rng.hpp"
#include "ocm/simulation.hpp"

namespace {

ocm::ObservationSet make_data(std::size_t n) {
    ocm::Rng rng(42);
    return ocm::sim::sample_2d_direct(rng, n);
}

std::vector<double> make_grid(const ocm::ObservationSet& obs, std::size_t points) {
    std::vector<double> poles = ocm::pole_locations(obs, ocm::QuantityKind::Volume);
    std::vector<double> grid(points);
    const double lo = poles.front();
    const double hi = poles.back();
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) /
                           static_cast<double>(points);
    }
    return grid;
}

void bench_n_tilde_grid_serial(benchmark::State& state) {
    const auto obs = make_data(static_cast<std::size_t>(state.range(0)));
    const auto grid = make_grid(obs, 512);
    std::vector<double> out(grid.size());
    for (auto _ : state) {
        ocm::n_tilde_grid_serial(obs, ocm::QuantityKind::Volume, grid, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_n_tilde_grid_omp(benchmark::State& state) {
    const auto obs = make_data(static_cast<std::size_t>(state.range(0)));
    const auto grid = make_grid(obs, 512);
    std::vector<double> out(grid.size());
    for (auto _ : state) {
        ocm::n_tilde_grid(obs, ocm::QuantityKind::Volume, grid, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_u_n_grid_serial(benchmark::State& state) {
    const auto obs = make_data(static_cast<std::size_t>(state.range(0)));
    const auto grid = make_grid(obs, 512);
    std::vector<double> out(grid.size());
    for (auto _ : state) {
        ocm::u_n_grid_serial(obs, ocm::QuantityKind::Volume, grid, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_u_n_grid_omp(benchmark::State& state) {
    const auto obs = make_data(static_cast<std::size_t>(state.range(0)));
    const auto grid = make_grid(obs, 512);
    std::vector<double> out(grid.size());
    for (auto _ : state) {
        ocm::u_n_grid(obs, ocm::QuantityKind::Volume, grid, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_isotonic_fit(benchmark::State& state) {
    const auto obs = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto fit = ocm::isotonic_n_hat(obs, ocm::QuantityKind::Volume, 4);
        benchmark::DoNotOptimize(fit.values().data());
    }
}

}  // namespace

BENCHMARK(bench_n_tilde_grid_serial)->Arg(1000)->Arg(5000);
BENCHMARK(bench_n_tilde_grid_omp)->Arg(1000)->Arg(5000);
BENCHMARK(bench_u_n_grid_serial)->Arg(1000)->Arg(5000);
BENCHMARK(bench_u_n_grid_omp)->Arg(1000)->Arg(5000);
BENCHMARK(bench_isotonic_fit)->Arg(1000)->Arg(2000);

BENCHMARK_MAIN();
