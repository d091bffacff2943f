#include "cbath/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cbath/errors.hpp"

namespace cbath {

void ReservoirSpec::validate() const {
    if (!(gamma0 > 0.0)) throw std::invalid_argument("ReservoirSpec: gamma0 must be > 0");
    if (!(lambda_width > 0.0)) throw std::invalid_argument("ReservoirSpec: lambda_width must be > 0");
    if (!(omega0 > 0.0)) throw std::invalid_argument("ReservoirSpec: omega0 must be > 0");
}

void EnsembleSpec::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("EnsembleSpec: n_qubits must be >= 1");
}

void TimeGrid::validate() const {
    if (!(t_start >= 0.0)) throw std::invalid_argument("TimeGrid: t_start must be >= 0");
    if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
    if (n_steps < 1) throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
}

std::vector<double> TimeGrid::samples() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(size()));
    for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = time(i);
    return out;
}

const char* to_string(CouplingRegime regime) {
    switch (regime) {
        case CouplingRegime::Markovian: return "Markovian";
        case CouplingRegime::NonMarkovian: return "NonMarkovian";
        case CouplingRegime::Boundary: return "Boundary";
    }
    return "?";
}

CouplingRegime classify_regime(const ReservoirSpec& spec) {
    spec.validate();
    const double half_width = 0.5 * spec.lambda_width;
    if (std::abs(spec.gamma0 - half_width) <= 1e-12 * spec.lambda_width)
        return CouplingRegime::Boundary;
    return spec.gamma0 < half_width ? CouplingRegime::Markovian : CouplingRegime::NonMarkovian;
}

int critical_qubit_number(const ReservoirSpec& spec) {
    spec.validate();
    return static_cast<int>(std::floor(spec.lambda_width / (2.0 * spec.gamma0))) + 1;
}

EffectiveRate effective_rate_d(const ReservoirSpec& spec, const EnsembleSpec& ens) {
    spec.validate();
    ens.validate();
    const double lam = spec.lambda_width;
    EffectiveRate rate;
    rate.d_squared = lam * lam - 2.0 * ens.n_qubits * spec.gamma0 * lam;
    rate.d = std::sqrt(std::complex<double>(rate.d_squared, 0.0));
    return rate;
}

double amplitude_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens, double t) {
    if (t < 0.0) throw std::domain_error("amplitude_closed_form: t must be >= 0");
    const EffectiveRate rate = effective_rate_d(spec, ens);
    const double lam = spec.lambda_width;
    const double n = static_cast<double>(ens.n_qubits);

    const std::complex<double> x = rate.d * (0.5 * t);
    std::complex<double> damped;  // e^{-lambda t/2} [cosh(Dt/2) + (lambda/D) sinh(Dt/2)]
    if (std::abs(x) < 1e-6) {
        const double sinh_over_d = 0.5 * t + rate.d_squared * t * t * t / 48.0;
        damped = std::exp(-0.5 * lam * t) * (std::cosh(x) + lam * sinh_over_d);
    } else if (std::abs(x.real()) < 350.0) {
        damped = std::exp(-0.5 * lam * t) * (std::cosh(x) + lam * std::sinh(x) / rate.d);
    } else {
        // cosh would overflow; fold the decay into the exponentials
        const std::complex<double> lam_over_d = lam / rate.d;
        damped = 0.5 * ((1.0 + lam_over_d) * std::exp(x - 0.5 * lam * t) +
                        (1.0 - lam_over_d) * std::exp(-x - 0.5 * lam * t));
    }

    if (std::abs(damped.imag() / n) >= 1e-10)
        throw NumericalError("amplitude_closed_form: imaginary residue " +
                             std::to_string(damped.imag() / n) + " exceeds 1e-10");
    return (n - 1.0) / n + damped.real() / n;
}

double amplitude_asymptote(const EnsembleSpec& ens) {
    ens.validate();
    const double n = static_cast<double>(ens.n_qubits);
    return (n - 1.0) / n;
}

double lorentzian_spectral_density(const ReservoirSpec& spec, double omega) {
    spec.validate();
    const double lam = spec.lambda_width;
    const double detuning = spec.omega0 - omega;
    return spec.gamma0 * lam * lam / (2.0 * std::numbers::pi * (detuning * detuning + lam * lam));
}

AmplitudeTrace amplitude_trace_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens,
                                           const TimeGrid& grid) {
    grid.validate();
    AmplitudeTrace trace{grid, {}, Provenance::ClosedForm};
    trace.values.reserve(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i)
        trace.values.push_back(amplitude_closed_form(spec, ens, grid.time(i)));
    return trace;
}

}  // namespace cbath
