#pragma once
// geometric_phase.hpp: geometric phase of the watched qubit over one
// quasicycle T = 2 pi / omega0, by two routes that must agree:
//   - the kinematic formula evaluated along the state trajectory with a
//     discrete, gauge-invariant Pancharatnam chain, and
//   - the model-specific closed-form integrand evaluated by composite
//     Simpson quadrature.
//
// Conventions (shared by both routes; chosen so they agree and so the
// vanishing-coupling limit reproduces pi(1 + cos theta)): the probe starts in
// the pure state cos(theta/2)|1> + sin(theta/2)|0>, i.e. excited population
// cos^2(theta/2), and the lab-frame coherence carries e^{-i omega0 t}.

#include <vector>

#include "cbath/density_matrix.hpp"
#include "cbath/model.hpp"

namespace cbath {

enum class GpMethod { Kinematic, ClosedForm };

struct GpResult {
    double phase = 0.0;      ///< principal value in (-pi, pi]
    double unwrapped = 0.0;  ///< accumulated value; the quantity that is plotted
    GpMethod method = GpMethod::Kinematic;
    double theta0 = 0.0;
};

/// State samples over one quasicycle with phase-aligned eigenvector sequences
/// (consecutive same-branch overlaps are real nonnegative).
struct Trajectory {
    double theta0 = 0.0;
    std::vector<double> times;
    std::vector<DensityMatrix2> states;
    std::vector<SpectralDecomposition> decomps;
};

/// Step count that resolves both the omega0 precession and the effective-rate
/// oscillation for the given parameters.
int suggested_k_steps(const ReservoirSpec& spec, const EnsembleSpec& ens);

/// Samples the channel evolution of the probe over [0, 2 pi / omega0] at
/// k_steps + 1 points (k_steps >= 200) and eigendecomposes each state.
Trajectory build_trajectory(const ReservoirSpec& spec, const EnsembleSpec& ens, double theta0,
                            int k_steps);

/// Kinematic geometric phase: follows the eigenbranch that starts at
/// eigenvalue 1 (the initial state must be pure) and chains eigenvector
/// overlaps. Throws NumericalError if the branch eigenvalue falls below 1e-12.
GpResult gp_kinematic(const Trajectory& traj);

/// Closed-form route: omega0 * integral over one quasicycle of
///   4 (|C|^2 cos^2(th/2) - lam)^2 / (|C|^2 sin^2 th + 4 (|C|^2 cos^2(th/2) - lam)^2),
/// lam = [1 - sqrt(|C|^2 sin^2 th + (2|C|^2 cos^2(th/2) - 1)^2)]/2, by
/// composite Simpson quadrature with k_steps panels. Where the denominator
/// falls below 1e-14 the integrand takes its limit value cos^2(th/2).
GpResult gp_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens, double theta0,
                        int k_steps);

/// Vanishing-coupling limit pi (1 + cos theta), unwrapped.
double gp_unitary_limit(double theta0);

/// Map an angle to its principal value in (-pi, pi].
double wrap_angle(double angle);

/// Map an angle into [0, 2 pi).
double mod_two_pi(double angle);

}  // namespace cbath
