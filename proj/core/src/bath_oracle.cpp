#include "cbath/bath_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cbath/errors.hpp"

namespace cbath {

namespace {
using Cd = std::complex<double>;
constexpr Cd kImag{0.0, 1.0};
}  // namespace

double DiscretizedBath::mode_spacing() const {
    return mode_freqs.size() > 1 ? mode_freqs[1] - mode_freqs[0] : 0.0;
}

double DiscretizedBath::coupling_weight() const {
    double sum = 0.0;
    for (double g : couplings) sum += g * g;
    return sum;
}

double DiscretizedBath::recurrence_time() const {
    return 2.0 * std::numbers::pi / mode_spacing();
}

double SingleExcitationState::norm_squared() const {
    double sum = std::norm(ground_amp);
    for (const auto& a : qubit_amps) sum += std::norm(a);
    for (const auto& a : mode_amps) sum += std::norm(a);
    return sum;
}

DiscretizedBath discretize_bath(const ReservoirSpec& spec, int m_modes, double half_width) {
    spec.validate();
    if (m_modes < 2) throw std::invalid_argument("discretize_bath: m_modes must be >= 2");
    if (!(half_width > 0.0)) throw std::invalid_argument("discretize_bath: half_width must be > 0");

    DiscretizedBath bath;
    bath.omega0 = spec.omega0;
    bath.mode_freqs.reserve(static_cast<std::size_t>(m_modes));
    bath.couplings.reserve(static_cast<std::size_t>(m_modes));
    const double d_omega = 2.0 * half_width / m_modes;
    for (int k = 0; k < m_modes; ++k) {
        const double omega = spec.omega0 - half_width + (k + 0.5) * d_omega;
        bath.mode_freqs.push_back(omega);
        bath.couplings.push_back(std::sqrt(lorentzian_spectral_density(spec, omega) * d_omega));
    }
    return bath;
}

namespace {

// RK4 stepper for the interaction-picture system. Every qubit amplitude obeys
// the identical equation dc_i/dt = -i sum_k g_k e^{i delta_k t} m_k, so the
// qubit sector is fully described by the shared integral "drift" added on top
// of each amplitude's initial value. The collective sum entering the mode
// equations is then sum0 + N * drift.
class Stepper {
  public:
    Stepper(const DiscretizedBath& bath, int n_qubits, Cd sum0)
        : g_(bath.couplings), nq_(static_cast<double>(n_qubits)), sum0_(sum0),
          m_(bath.couplings.size()) {
        detunings_.resize(m_);
        for (std::size_t k = 0; k < m_; ++k) detunings_[k] = bath.omega0 - bath.mode_freqs[k];
        rotors_.resize(m_);
        half_turn_.resize(m_);
        k1_.resize(m_);
        k2_.resize(m_);
        k3_.resize(m_);
        k4_.resize(m_);
        scratch_.resize(m_);
    }

    void prepare(double h) {
        h_ = h;
        for (std::size_t k = 0; k < m_; ++k)
            half_turn_[k] = std::polar(1.0, detunings_[k] * 0.5 * h);
    }

    void step(Cd& drift, std::vector<Cd>& modes, double t, long step_index) {
        // rotors hold e^{i delta_k t}; refresh from scratch periodically so
        // multiplicative drift cannot accumulate
        if (step_index % 128 == 0) {
            for (std::size_t k = 0; k < m_; ++k) rotors_[k] = std::polar(1.0, detunings_[k] * t);
        }

        // stage 1 at t
        const Cd dq1 = derivative(modes, k1_, collective(drift));

        // stages 2 and 3 at t + h/2
        advance_rotors();
        for (std::size_t k = 0; k < m_; ++k) scratch_[k] = modes[k] + 0.5 * h_ * k1_[k];
        const Cd dq2 = derivative(scratch_, k2_, collective(drift + 0.5 * h_ * dq1));

        for (std::size_t k = 0; k < m_; ++k) scratch_[k] = modes[k] + 0.5 * h_ * k2_[k];
        const Cd dq3 = derivative(scratch_, k3_, collective(drift + 0.5 * h_ * dq2));

        // stage 4 at t + h
        advance_rotors();
        for (std::size_t k = 0; k < m_; ++k) scratch_[k] = modes[k] + h_ * k3_[k];
        const Cd dq4 = derivative(scratch_, k4_, collective(drift + h_ * dq3));

        drift += h_ / 6.0 * (dq1 + 2.0 * dq2 + 2.0 * dq3 + dq4);
        for (std::size_t k = 0; k < m_; ++k)
            modes[k] += h_ / 6.0 * (k1_[k] + 2.0 * k2_[k] + 2.0 * k3_[k] + k4_[k]);
    }

  private:
    Cd collective(Cd drift) const { return sum0_ + nq_ * drift; }

    // fills dmodes_k = -i g_k conj(rotor_k) S and returns -i sum_k g_k rotor_k m_k
    Cd derivative(const std::vector<Cd>& modes, std::vector<Cd>& dmodes, Cd collective_sum) {
        Cd mode_sum{0.0, 0.0};
        for (std::size_t k = 0; k < m_; ++k) {
            mode_sum += g_[k] * rotors_[k] * modes[k];
            dmodes[k] = -kImag * g_[k] * std::conj(rotors_[k]) * collective_sum;
        }
        return -kImag * mode_sum;
    }

    void advance_rotors() {
        for (std::size_t k = 0; k < m_; ++k) rotors_[k] *= half_turn_[k];
    }

    const std::vector<double>& g_;
    double nq_;
    Cd sum0_;
    std::size_t m_;
    double h_ = 0.0;
    std::vector<double> detunings_;
    std::vector<Cd> rotors_, half_turn_;
    std::vector<Cd> k1_, k2_, k3_, k4_, scratch_;
};

}  // namespace

AmplitudeTrace evolve_single_excitation(const DiscretizedBath& bath, const EnsembleSpec& ens,
                                        const TimeGrid& grid, double dt, BathInitialCondition ic,
                                        BathRunDiagnostics* diagnostics) {
    ens.validate();
    grid.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_single_excitation: dt must be > 0");
    if (dt > grid.spacing() * (1.0 + 1e-12))
        throw std::invalid_argument("evolve_single_excitation: dt exceeds the grid spacing");
    if (bath.mode_freqs.size() < 2 || bath.mode_freqs.size() != bath.couplings.size())
        throw std::invalid_argument("evolve_single_excitation: malformed bath");
    if (grid.t_end > 0.5 * bath.recurrence_time())
        throw std::invalid_argument(
            "evolve_single_excitation: horizon exceeds half the bath recurrence time " +
            std::to_string(bath.recurrence_time()));

    const int n = ens.n_qubits;
    const double dark_weight = (n - 1.0) / static_cast<double>(n);

    SingleExcitationState state;
    state.mode_amps.assign(bath.mode_freqs.size(), Cd{0.0, 0.0});
    if (ic == BathInitialCondition::SymmetricShared) {
        state.qubit_amps.assign(static_cast<std::size_t>(n),
                                Cd{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
    } else {
        state.qubit_amps.assign(static_cast<std::size_t>(n), Cd{0.0, 0.0});
        state.qubit_amps[0] = Cd{1.0, 0.0};
    }
    const Cd watched0 = state.qubit_amps[0];
    Cd sum0{0.0, 0.0};
    for (const auto& a : state.qubit_amps) sum0 += a;
    const std::vector<Cd> initial_amps = state.qubit_amps;
    const double norm0 = state.norm_squared();

    Stepper stepper(bath, n, sum0);
    Cd drift{0.0, 0.0};

    BathRunDiagnostics diag;
    auto sync_state = [&]() {
        for (std::size_t i = 0; i < state.qubit_amps.size(); ++i)
            state.qubit_amps[i] = initial_amps[i] + drift;
    };
    auto check_invariants = [&](double t) {
        sync_state();
        const double norm_drift = std::abs(state.norm_squared() - norm0);
        diag.max_norm_drift = std::max(diag.max_norm_drift, norm_drift);
        if (norm_drift > 1e-6)
            throw NumericalError("evolve_single_excitation: norm drift " +
                                 std::to_string(norm_drift) + " at t = " + std::to_string(t) +
                                 "; reduce dt");
        if (ic == BathInitialCondition::SymmetricShared) {
            double spread = 0.0;
            for (const auto& a : state.qubit_amps)
                spread = std::max(spread, std::abs(a - state.qubit_amps[0]));
            diag.max_symmetry_spread = std::max(diag.max_symmetry_spread, spread);
        }
    };
    auto emit = [&](std::vector<double>& values) {
        const Cd watched = watched0 + drift;
        Cd propagator;
        if (ic == BathInitialCondition::SymmetricShared) {
            const Cd ratio = watched / watched0;  // the symmetric-sector amplitude
            propagator = dark_weight + ratio / static_cast<double>(n);
        } else {
            propagator = watched;
        }
        values.push_back(std::abs(propagator));
    };

    AmplitudeTrace trace{grid, {}, Provenance::BathOracle};
    trace.values.reserve(static_cast<std::size_t>(grid.size()));

    long step_index = 0;
    double t = 0.0;
    auto march = [&](double span) {
        if (span <= 0.0) return;
        const int m = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
        const double h = span / m;
        stepper.prepare(h);
        for (int i = 0; i < m; ++i) {
            stepper.step(drift, state.mode_amps, t, step_index++);
            t += h;
        }
    };

    march(grid.t_start);
    check_invariants(t);
    emit(trace.values);
    for (int i = 1; i < grid.size(); ++i) {
        march(grid.spacing());
        check_invariants(t);
        emit(trace.values);
    }
    if (diagnostics) *diagnostics = diag;
    return trace;
}

}  // namespace cbath
