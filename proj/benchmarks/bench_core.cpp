#include <benchmark/benchmark.h>

#include <numbers>

#include "cbath/bath_oracle.hpp"
#include "cbath/geometric_phase.hpp"
#include "cbath/kernel_ode.hpp"
#include "cbath/model.hpp"
#include "cbath/qfi.hpp"

namespace {

constexpr double kPi = std::numbers::pi;
const cbath::ReservoirSpec kWeak{0.05, 1.0, 5.0};
const cbath::ReservoirSpec kStrong{10.0, 1.0, 5.0};

void BM_AmplitudeClosedForm(benchmark::State& state) {
    const cbath::EnsembleSpec ens{static_cast<int>(state.range(0))};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cbath::amplitude_closed_form(kWeak, ens, t));
        t += 1e-3;
    }
}
BENCHMARK(BM_AmplitudeClosedForm)->Arg(1)->Arg(11)->Arg(1024);

void BM_KernelOdeSolve(benchmark::State& state) {
    const cbath::TimeGrid grid{0.0, 50.0, 500};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cbath::solve_amplitude_ode(kWeak, cbath::EnsembleSpec{2}, grid, cbath::SolverConfig{}));
}
BENCHMARK(BM_KernelOdeSolve);

void BM_QfiSpectral(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cbath::qfi_spectral(cbath::probe_spectral_inputs(0.7, 0.795)));
}
BENCHMARK(BM_QfiSpectral);

void BM_EigenDecompose(benchmark::State& state) {
    const cbath::DensityMatrix2 rho = cbath::phase_probe_density(0.7, 0.795);
    for (auto _ : state) benchmark::DoNotOptimize(cbath::eigen_decompose(rho));
}
BENCHMARK(BM_EigenDecompose);

void BM_GpClosedForm(benchmark::State& state) {
    const cbath::EnsembleSpec ens{static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(cbath::gp_closed_form(kStrong, ens, kPi / 4.0, 2000));
}
BENCHMARK(BM_GpClosedForm)->Arg(2)->Arg(64);

void BM_GpKinematic(benchmark::State& state) {
    const cbath::EnsembleSpec ens{2};
    const cbath::Trajectory traj = cbath::build_trajectory(kStrong, ens, kPi / 4.0, 2000);
    for (auto _ : state) benchmark::DoNotOptimize(cbath::gp_kinematic(traj));
}
BENCHMARK(BM_GpKinematic);

void BM_BathOracle(benchmark::State& state) {
    const cbath::DiscretizedBath bath =
        cbath::discretize_bath(kWeak, static_cast<int>(state.range(0)), 25.0);
    const cbath::TimeGrid grid{0.0, 1.0, 10};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cbath::evolve_single_excitation(bath, cbath::EnsembleSpec{2}, grid, 1e-3));
}
BENCHMARK(BM_BathOracle)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
