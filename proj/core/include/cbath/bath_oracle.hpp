#pragma once
// bath_oracle.hpp: brute-force ground truth. The reservoir is discretized
// into M modes and the full single-excitation Schrodinger dynamics of N
// qubits plus modes is integrated in the interaction picture.

#include <complex>
#include <vector>

#include "cbath/model.hpp"

namespace cbath {

/// Uniform midpoint sampling of the Lorentzian over [omega0 - W, omega0 + W]
/// with couplings g_k^2 = J(omega_k) * d_omega.
struct DiscretizedBath {
    double omega0 = 0.0;
    std::vector<double> mode_freqs;  ///< strictly increasing
    std::vector<double> couplings;   ///< g_k >= 0

    double mode_spacing() const;
    double coupling_weight() const;  ///< sum of g_k^2
    /// 2 pi / d_omega; the discrete bath stops being a reservoir surrogate
    /// well before this, so evolution is capped at half of it.
    double recurrence_time() const;
};

/// Amplitudes of the single-excitation sector: N qubit amplitudes, M one-photon
/// mode amplitudes, and the ground component (a constant of motion).
struct SingleExcitationState {
    std::vector<std::complex<double>> qubit_amps;
    std::vector<std::complex<double>> mode_amps;
    std::complex<double> ground_amp{0.0, 0.0};

    double norm_squared() const;
};

enum class BathInitialCondition {
    SymmetricShared,  ///< all qubit amplitudes 1/sqrt(N); the watched propagator is reconstructed
    WatchedExcited,   ///< qubit 0 carries the full excitation
};

struct BathRunDiagnostics {
    double max_norm_drift = 0.0;
    double max_symmetry_spread = 0.0;  ///< largest pairwise qubit-amplitude difference seen
};

DiscretizedBath discretize_bath(const ReservoirSpec& spec, int m_modes, double half_width);

/// RK4 integration of
///   dc_i/dt = -i sum_k g_k e^{+i(omega0-omega_k)t} m_k
///   dm_k/dt = -i g_k e^{-i(omega0-omega_k)t} sum_i c_i
/// returning the magnitude of the watched qubit's propagator sampled on the
/// grid. Norm drift beyond 1e-6 aborts with a NumericalError.
AmplitudeTrace evolve_single_excitation(const DiscretizedBath& bath, const EnsembleSpec& ens,
                                        const TimeGrid& grid, double dt,
                                        BathInitialCondition ic = BathInitialCondition::SymmetricShared,
                                        BathRunDiagnostics* diagnostics = nullptr);

}  // namespace cbath
