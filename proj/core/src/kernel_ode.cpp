#include "cbath/kernel_ode.hpp"

#include <cmath>
#include <stdexcept>

namespace cbath {

double memory_kernel(const ReservoirSpec& spec, double delta_t) {
    spec.validate();
    if (delta_t < 0.0) throw std::domain_error("memory_kernel: delta_t must be >= 0");
    const double lam = spec.lambda_width;
    return 0.5 * spec.gamma0 * lam * std::exp(-lam * delta_t);
}

namespace {

struct Derivative {
    double dc;
    double db;
};

inline Derivative rhs(const KernelState& s, double n, double gamma_lam_half, double lam) {
    return {-n * s.b, gamma_lam_half * s.c - lam * s.b};
}

inline KernelState rk4_step(const KernelState& s, double h, double n, double ghalf, double lam) {
    const Derivative k1 = rhs(s, n, ghalf, lam);
    const Derivative k2 = rhs({s.c + 0.5 * h * k1.dc, s.b + 0.5 * h * k1.db}, n, ghalf, lam);
    const Derivative k3 = rhs({s.c + 0.5 * h * k2.dc, s.b + 0.5 * h * k2.db}, n, ghalf, lam);
    const Derivative k4 = rhs({s.c + h * k3.dc, s.b + h * k3.db}, n, ghalf, lam);
    return {s.c + h / 6.0 * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc),
            s.b + h / 6.0 * (k1.db + 2.0 * k2.db + 2.0 * k3.db + k4.db)};
}

// march a state across [0, span] in ceil(span/dt) equal sub-steps
KernelState march(KernelState s, double span, double dt, double n, double ghalf, double lam) {
    if (span <= 0.0) return s;
    const int m = static_cast<int>(std::ceil(span / dt - 1e-12));
    const double h = span / std::max(1, m);
    for (int i = 0; i < std::max(1, m); ++i) s = rk4_step(s, h, n, ghalf, lam);
    return s;
}

}  // namespace

AmplitudeTrace solve_amplitude_ode(const ReservoirSpec& spec, const EnsembleSpec& ens,
                                   const TimeGrid& grid, const SolverConfig& cfg) {
    spec.validate();
    ens.validate();
    grid.validate();
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
    if (cfg.dt > grid.spacing() * (1.0 + 1e-12))
        throw std::invalid_argument("SolverConfig: dt exceeds the grid spacing");

    const double n = static_cast<double>(ens.n_qubits);
    const double lam = spec.lambda_width;
    const double ghalf = 0.5 * spec.gamma0 * lam;
    const double dark_weight = (n - 1.0) / n;

    AmplitudeTrace trace{grid, {}, Provenance::KernelOde};
    trace.values.reserve(static_cast<std::size_t>(grid.size()));

    KernelState state;  // (1, 0) at t = 0
    state = march(state, grid.t_start, cfg.dt, n, ghalf, lam);
    trace.values.push_back(dark_weight + state.c / n);
    for (int i = 1; i < grid.size(); ++i) {
        state = march(state, grid.spacing(), cfg.dt, n, ghalf, lam);
        trace.values.push_back(dark_weight + state.c / n);
    }
    return trace;
}

}  // namespace cbath
