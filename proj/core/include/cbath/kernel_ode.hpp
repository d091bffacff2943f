#pragma once
// kernel_ode.hpp: integrates the amplitude's memory-kernel equation as an
// equivalent local two-variable system. Serves as the first numerical
// cross-check on the closed-form amplitude.

#include "cbath/model.hpp"

namespace cbath {

/// Fixed-step classical Runge-Kutta 4. Fixed stepping keeps CSV fixtures
/// byte-for-byte reproducible.
struct SolverConfig {
    double dt = 2.5e-3;  ///< step size, units of 1/lambda; must not exceed the grid spacing
};

/// Symmetric-sector amplitude and its exponential-kernel memory variable.
/// c(0) = 1, b(0) = 0.
struct KernelState {
    double c = 1.0;
    double b = 0.0;
};

/// Memory kernel f(dt) = (gamma0 lambda / 2) e^{-lambda dt}: the frequency
/// integral of J(omega) e^{i (omega0 - omega) dt} for a Lorentzian at
/// resonance.
double memory_kernel(const ReservoirSpec& spec, double delta_t);

/// Integrates dc/dt = -N b, db/dt = (gamma0 lambda / 2) c - lambda b from
/// (1, 0) with RK4, then maps the symmetric-sector amplitude onto the watched
/// qubit's propagator (N-1)/N + c(t)/N sampled on the grid.
AmplitudeTrace solve_amplitude_ode(const ReservoirSpec& spec, const EnsembleSpec& ens,
                                   const TimeGrid& grid, const SolverConfig& cfg);

}  // namespace cbath
