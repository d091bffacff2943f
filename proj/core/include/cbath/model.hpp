#pragma once
// model.hpp: reservoir and ensemble parameters plus the closed-form survival
// amplitude of one qubit among N sharing a zero-temperature Lorentzian bath.

#include <complex>
#include <vector>

namespace cbath {

/// Lorentzian reservoir parameters. Every rate and time in this library is a
/// ratio to the spectral width lambda; lambda_width = 1 is the canonical
/// choice and all fixtures use it.
struct ReservoirSpec {
    double gamma0 = 0.0;        ///< system-reservoir coupling rate (units of lambda)
    double lambda_width = 1.0;  ///< spectral width of the Lorentzian (the unit)
    double omega0 = 5.0;        ///< qubit transition frequency (units of lambda)

    void validate() const;

    /// Reservoir correlation time 1/lambda.
    double reservoir_correlation_time() const { return 1.0 / lambda_width; }
    /// Relaxation time 1/gamma0.
    double relaxation_time() const { return 1.0 / gamma0; }
};

/// Total number of qubits coupled to the common reservoir. One qubit is
/// watched; the other N-1 act as protectors.
struct EnsembleSpec {
    int n_qubits = 1;
    void validate() const;
};

enum class CouplingRegime { Markovian, NonMarkovian, Boundary };

const char* to_string(CouplingRegime regime);

/// D = sqrt(lambda^2 - 2 N gamma0 lambda). The square root is principal, so
/// d is purely real (d_squared >= 0) or purely imaginary (d_squared < 0).
struct EffectiveRate {
    double d_squared = 0.0;
    std::complex<double> d;
};

/// Uniform time grid with n_steps intervals (n_steps + 1 samples).
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int n_steps = 0;

    void validate() const;
    double spacing() const { return (t_end - t_start) / n_steps; }
    int size() const { return n_steps + 1; }
    double time(int i) const { return t_start + spacing() * i; }
    std::vector<double> samples() const;
};

enum class Provenance { ClosedForm, KernelOde, BathOracle };

/// Time grid plus real amplitude samples C(t), tagged with the route that
/// produced them.
struct AmplitudeTrace {
    TimeGrid grid;
    std::vector<double> values;
    Provenance provenance = Provenance::ClosedForm;
};

/// Weak coupling (gamma0 < lambda/2) is Markovian, strong coupling is
/// non-Markovian; equality within 1e-12*lambda gets its own tag.
CouplingRegime classify_regime(const ReservoirSpec& spec);

/// Smallest total qubit number N_c = floor(lambda/(2 gamma0)) + 1 at which the
/// effective rate D turns imaginary and the dynamics becomes oscillatory.
int critical_qubit_number(const ReservoirSpec& spec);

EffectiveRate effective_rate_d(const ReservoirSpec& spec, const EnsembleSpec& ens);

/// Survival amplitude
///   C(t) = (N-1)/N + e^{-lambda t/2}/N [cosh(Dt/2) + (lambda/D) sinh(Dt/2)],
/// evaluated in complex arithmetic. The imaginary residue must stay below
/// 1e-10 and is discarded; near D = 0 the sinh(Dt/2)/D factor switches to its
/// series t/2 + D^2 t^3/48.
double amplitude_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens, double t);

/// t -> infinity limit (N-1)/N of the survival amplitude.
double amplitude_asymptote(const EnsembleSpec& ens);

/// J(omega) = (1/2pi) gamma0 lambda^2 / ((omega0 - omega)^2 + lambda^2).
double lorentzian_spectral_density(const ReservoirSpec& spec, double omega);

/// Closed-form amplitude sampled on a grid.
AmplitudeTrace amplitude_trace_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens,
                                           const TimeGrid& grid);

}  // namespace cbath
