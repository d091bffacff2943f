#include "cbath/geometric_phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cbath/errors.hpp"

namespace cbath {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_theta(double theta0) {
    if (!(theta0 >= 0.0 && theta0 <= kTwoPi))
        throw std::invalid_argument("theta0 must lie in [0, 2 pi]");
}
}  // namespace

double wrap_angle(double angle) {
    double w = std::fmod(angle + std::numbers::pi, kTwoPi);
    if (w <= 0.0) w += kTwoPi;
    return w - std::numbers::pi;
}

double mod_two_pi(double angle) {
    double m = std::fmod(angle, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    return m;
}

int suggested_k_steps(const ReservoirSpec& spec, const EnsembleSpec& ens) {
    const EffectiveRate rate = effective_rate_d(spec, ens);
    const double period = kTwoPi / spec.omega0;
    const double fastest = std::max(spec.omega0, 0.5 * std::abs(rate.d));
    const double cycles = period * fastest / kTwoPi;
    return std::max(2000, 400 * static_cast<int>(std::ceil(cycles)));
}

Trajectory build_trajectory(const ReservoirSpec& spec, const EnsembleSpec& ens, double theta0,
                            int k_steps) {
    spec.validate();
    ens.validate();
    validate_theta(theta0);
    if (k_steps < 200) throw std::invalid_argument("build_trajectory: k_steps must be >= 200");

    const double period = kTwoPi / spec.omega0;
    const double excited = std::cos(0.5 * theta0);
    const double ground = std::sin(0.5 * theta0);
    const double pop0 = excited * excited;
    const double coh0 = excited * ground;

    Trajectory traj;
    traj.theta0 = theta0;
    traj.times.reserve(static_cast<std::size_t>(k_steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(k_steps) + 1);
    traj.decomps.reserve(static_cast<std::size_t>(k_steps) + 1);

    for (int k = 0; k <= k_steps; ++k) {
        const double t = period * k / k_steps;
        const double c = amplitude_closed_form(spec, ens, t);
        Mat2 m;
        m.e00 = pop0 * c * c;
        m.e01 = coh0 * c * std::polar(1.0, -spec.omega0 * t);
        m.e10 = std::conj(m.e01);
        m.e11 = 1.0 - pop0 * c * c;
        traj.times.push_back(t);
        traj.states.emplace_back(m);

        SpectralDecomposition decomp = eigen_decompose(traj.states.back());
        if (k > 0) {
            // phase-align each branch so consecutive overlaps are real >= 0
            const SpectralDecomposition& prev = traj.decomps.back();
            for (std::size_t i = 0; i < 2; ++i) {
                const Complex o = dot(prev.eigenvectors[i], decomp.eigenvectors[i]);
                const double mag = std::abs(o);
                if (mag > 1e-14) {
                    const Complex phase = std::conj(o) / mag;
                    decomp.eigenvectors[i].a *= phase;
                    decomp.eigenvectors[i].b *= phase;
                }
            }
        }
        traj.decomps.push_back(decomp);
    }
    return traj;
}

GpResult gp_kinematic(const Trajectory& traj) {
    if (traj.decomps.size() < 2 || traj.decomps.size() != traj.times.size())
        throw std::invalid_argument("gp_kinematic: malformed trajectory");

    const SpectralDecomposition& first = traj.decomps.front();
    std::size_t branch = 0;
    if (std::abs(first.eigenvalues[0] - 1.0) > 1e-9)
        throw std::invalid_argument("gp_kinematic: initial state must be pure");

    // chain of overlaps along the followed branch; gauge-invariant because
    // every eigenvector enters once as a bra and once as a ket
    const Vec2 start = first.eigenvectors[branch];
    Vec2 prev = start;
    double connection = 0.0;
    for (std::size_t k = 1; k < traj.decomps.size(); ++k) {
        const SpectralDecomposition& decomp = traj.decomps[k];
        const Complex o0 = dot(prev, decomp.eigenvectors[0]);
        const Complex o1 = dot(prev, decomp.eigenvectors[1]);
        const std::size_t next = std::abs(o0) >= std::abs(o1) ? 0 : 1;
        if (decomp.eigenvalues[next] < 1e-12)
            throw NumericalError("gp_kinematic: eigenvalue branch lost at t = " +
                                 std::to_string(traj.times[k]));
        connection += std::arg(next == 0 ? o0 : o1);
        prev = decomp.eigenvectors[next];
        branch = next;
    }

    const double endpoint = std::arg(dot(start, prev));
    const double raw = endpoint - connection;

    GpResult result;
    result.method = GpMethod::Kinematic;
    result.theta0 = traj.theta0;
    result.unwrapped = mod_two_pi(raw);
    result.phase = wrap_angle(result.unwrapped);
    return result;
}

GpResult gp_closed_form(const ReservoirSpec& spec, const EnsembleSpec& ens, double theta0,
                        int k_steps) {
    spec.validate();
    ens.validate();
    validate_theta(theta0);
    if (k_steps < 2) throw std::invalid_argument("gp_closed_form: k_steps must be >= 2");
    const int panels = k_steps % 2 == 0 ? k_steps : k_steps + 1;  // Simpson needs an even count

    const double period = kTwoPi / spec.omega0;
    const double q = std::cos(0.5 * theta0) * std::cos(0.5 * theta0);
    const double sin2 = std::sin(theta0) * std::sin(theta0);

    auto integrand = [&](double t) {
        const double c = amplitude_closed_form(spec, ens, t);
        const double u = c * c;
        const double lam_eig = 0.5 * (1.0 - std::sqrt(u * sin2 + (2.0 * u * q - 1.0) * (2.0 * u * q - 1.0)));
        const double gap = u * q - lam_eig;
        const double num = 4.0 * gap * gap;
        const double den = u * sin2 + num;
        if (den < 1e-14) return q;  // limit value of the ratio
        return num / den;
    };

    const double h = period / panels;
    double sum = integrand(0.0) + integrand(period);
    for (int k = 1; k < panels; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * integrand(h * k);
    const double value = spec.omega0 * h * sum / 3.0;

    GpResult result;
    result.method = GpMethod::ClosedForm;
    result.theta0 = theta0;
    result.unwrapped = value;
    result.phase = wrap_angle(value);
    return result;
}

double gp_unitary_limit(double theta0) {
    validate_theta(theta0);
    return std::numbers::pi * (1.0 + std::cos(theta0));
}

}  // namespace cbath
