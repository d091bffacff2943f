#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "cbath/kernel_ode.hpp"
#include "cbath/model.hpp"

using namespace cbath;

namespace {

double sup_distance_to_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens,
                                   const TimeGrid& grid, const SolverConfig& cfg) {
    const AmplitudeTrace ode = solve_amplitude_ode(spec, ens, grid, cfg);
    double worst = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(ode.values[static_cast<std::size_t>(i)] -
                                         amplitude_closed_form(spec, ens, grid.time(i))));
    return worst;
}

}  // namespace

TEST_CASE("memory kernel values") {
    const ReservoirSpec spec{0.05, 1.0, 5.0};
    CHECK(memory_kernel(spec, 0.0) == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(memory_kernel(spec, 1.0) == doctest::Approx(0.025 * std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(memory_kernel(spec, -0.1), std::domain_error);
}

TEST_CASE("memory kernel equals the Fourier quadrature of the spectral density") {
    // f(dt) should match int J(omega) e^{i (omega0 - omega) dt} d omega
    const ReservoirSpec spec{0.05, 1.0, 5.0};
    const double dt = 0.7;
    const double half_window = 200.0;
    const int panels = 400000;
    const double h = 2.0 * half_window / panels;
    std::complex<double> sum = 0.0;
    for (int k = 0; k <= panels; ++k) {
        const double omega = spec.omega0 - half_window + k * h;
        const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += weight * lorentzian_spectral_density(spec, omega) *
               std::polar(1.0, (spec.omega0 - omega) * dt);
    }
    const std::complex<double> quad = sum * h / 3.0;
    CHECK(std::abs(quad.real() - memory_kernel(spec, dt)) < 1e-4);
    CHECK(std::abs(quad.imag()) < 1e-4);
}

TEST_CASE("kernel ODE reproduces the closed form") {
    const SolverConfig cfg{2.5e-3};
    CHECK(sup_distance_to_closed_form({0.05, 1.0, 5.0}, EnsembleSpec{1}, {0.0, 50.0, 500}, cfg) <
          1e-6);
    CHECK(sup_distance_to_closed_form({10.0, 1.0, 5.0}, EnsembleSpec{4}, {0.0, 5.0, 500}, cfg) <
          1e-6);
}

TEST_CASE("kernel ODE: vanishing coupling keeps the amplitude at 1") {
    const ReservoirSpec spec{1e-8, 1.0, 5.0};
    const TimeGrid grid{0.0, 20.0, 200};
    const AmplitudeTrace ode = solve_amplitude_ode(spec, EnsembleSpec{3}, grid, SolverConfig{});
    for (double v : ode.values) CHECK(std::abs(v - 1.0) < 1e-6);
}

TEST_CASE("kernel ODE: RK4 order from step halving") {
    const ReservoirSpec spec{0.05, 1.0, 5.0};
    const EnsembleSpec ens{2};
    const TimeGrid grid{0.0, 10.0, 100};
    const double coarse = sup_distance_to_closed_form(spec, ens, grid, SolverConfig{0.05});
    const double fine = sup_distance_to_closed_form(spec, ens, grid, SolverConfig{0.025});
    const double ratio = coarse / fine;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("kernel ODE: grid resolution only interpolates") {
    const ReservoirSpec spec{0.5, 1.0, 5.0};
    const EnsembleSpec ens{3};
    const SolverConfig cfg{1e-3};
    const AmplitudeTrace coarse = solve_amplitude_ode(spec, ens, {0.0, 10.0, 20}, cfg);
    const AmplitudeTrace fine = solve_amplitude_ode(spec, ens, {0.0, 10.0, 100}, cfg);
    for (int i = 0; i < coarse.grid.size(); ++i) {
        const auto iu = static_cast<std::size_t>(i);
        CHECK(coarse.values[iu] == doctest::Approx(fine.values[iu * 5]).epsilon(1e-12));
    }
}

TEST_CASE("kernel ODE: solved trace respects the decay envelope") {
    for (double g0 : {0.05, 0.5, 10.0})
        for (int n : {1, 2, 11}) {
            const ReservoirSpec spec{g0, 1.0, 5.0};
            const EnsembleSpec ens{n};
            const TimeGrid grid{0.0, 30.0, 300};
            const AmplitudeTrace ode = solve_amplitude_ode(spec, ens, grid, SolverConfig{});
            const double re_d = effective_rate_d(spec, ens).d.real();
            const double asym = amplitude_asymptote(ens);
            for (int i = 0; i < grid.size(); ++i) {
                const double t = grid.time(i);
                const double envelope = (1.0 + 0.5 * t) * std::exp(-0.5 * (1.0 - re_d) * t) / n;
                CHECK(std::abs(ode.values[static_cast<std::size_t>(i)] - asym) <= envelope + 1e-6);
            }
        }
}

TEST_CASE("kernel ODE: dt above the grid spacing is rejected") {
    const ReservoirSpec spec{0.05, 1.0, 5.0};
    CHECK_THROWS_AS(solve_amplitude_ode(spec, EnsembleSpec{1}, {0.0, 1.0, 100}, SolverConfig{0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_amplitude_ode(spec, EnsembleSpec{1}, {0.0, 1.0, 100}, SolverConfig{0.0}),
                    std::invalid_argument);
}

TEST_CASE("kernel ODE: nonzero grid start") {
    const ReservoirSpec spec{0.05, 1.0, 5.0};
    const EnsembleSpec ens{2};
    const TimeGrid grid{5.0, 15.0, 100};
    const AmplitudeTrace ode = solve_amplitude_ode(spec, ens, grid, SolverConfig{1e-3});
    for (int i = 0; i < grid.size(); ++i)
        CHECK(ode.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(amplitude_closed_form(spec, ens, grid.time(i))).epsilon(1e-8));
}
