#include "cbath/qfi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbath {

DensityMatrix2 reduced_density_matrix(double rho11_0, double rho00_0, Complex rho10_0, Complex c) {
    if (rho11_0 < -1e-12 || rho00_0 < -1e-12)
        throw std::invalid_argument("reduced_density_matrix: negative initial population");
    if (std::abs(rho11_0 + rho00_0 - 1.0) > 1e-12)
        throw std::invalid_argument("reduced_density_matrix: initial trace differs from 1");
    if (std::norm(rho10_0) > rho11_0 * rho00_0 + 1e-12)
        throw std::invalid_argument("reduced_density_matrix: initial coherence violates positivity");
    if (std::abs(c) > 1.0 + 1e-12)
        throw std::invalid_argument("reduced_density_matrix: |c| must not exceed 1");

    const double decay = std::norm(c);
    Mat2 m;
    m.e00 = rho11_0 * decay;
    m.e01 = rho10_0 * c;
    m.e10 = std::conj(m.e01);
    m.e11 = rho00_0 + rho11_0 * (1.0 - decay);
    return DensityMatrix2(m);
}

DensityMatrix2 phase_probe_density(double theta, double c) {
    if (std::abs(c) > 1.0 + 1e-12)
        throw std::invalid_argument("phase_probe_density: c must lie in [-1, 1]");
    Mat2 m;
    m.e00 = 0.5 * c * c;
    m.e01 = 0.5 * c * std::polar(1.0, theta);
    m.e10 = std::conj(m.e01);
    m.e11 = 1.0 - 0.5 * c * c;
    return DensityMatrix2(m);
}

Mat2 phase_probe_drho(double theta, double c) {
    Mat2 m;
    m.e01 = Complex(0.0, 1.0) * (0.5 * c) * std::polar(1.0, theta);
    m.e10 = std::conj(m.e01);
    return m;
}

SldResult sld_operator(const SpectralDecomposition& decomp, const Mat2& drho) {
    SldResult result;
    Complex entries[2][2] = {};  // L in the eigenbasis
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double denom = decomp.eigenvalues[static_cast<std::size_t>(i)] +
                                 decomp.eigenvalues[static_cast<std::size_t>(j)];
            if (denom <= 1e-14) {
                entries[i][j] = Complex{0.0, 0.0};
                result.rank_deficient = true;
                continue;
            }
            const Vec2& vi = decomp.eigenvectors[static_cast<std::size_t>(i)];
            const Vec2& vj = decomp.eigenvectors[static_cast<std::size_t>(j)];
            entries[i][j] = 2.0 * dot(vi, drho * vj) / denom;
        }
    }
    Mat2 l{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Vec2& vi = decomp.eigenvectors[static_cast<std::size_t>(i)];
            const Vec2& vj = decomp.eigenvectors[static_cast<std::size_t>(j)];
            l = l + entries[i][j] * Mat2::outer(vi, vj);
        }
    result.L = l;
    return result;
}

double qfi_from_sld(const DensityMatrix2& rho, const Mat2& L) {
    return (rho.m * L * L).trace().real();
}

namespace {

// Probe eigensystem pieces shared by the analytic and FD input builders.
// Eigenvector rays are (w, mu - a) with a = rho11, w = rho10, normalization n.
struct ProbeEigs {
    double a;          // c^2/2
    double w;          // |rho10| = c/2
    double mu[2];      // eigenvalues, descending
    double offset[2];  // mu_i - a
    double nrm[2];     // sqrt(w^2 + offset^2)
};

ProbeEigs probe_eigs(double c) {
    ProbeEigs p{};
    p.a = 0.5 * c * c;
    p.w = 0.5 * c;
    const double z = 2.0 * p.a - 1.0;
    const double r = std::sqrt(c * c + z * z);
    p.mu[0] = 0.5 * (1.0 + r);
    p.mu[1] = 0.5 * (1.0 - r);
    for (int i = 0; i < 2; ++i) {
        p.offset[i] = p.mu[i] - p.a;
        p.nrm[i] = std::sqrt(p.w * p.w + p.offset[i] * p.offset[i]);
    }
    return p;
}

}  // namespace

QfiSpectralInputs probe_spectral_inputs(double theta, double c) {
    QfiSpectralInputs in;
    in.decomp = eigen_decompose(phase_probe_density(theta, c));
    in.drho = phase_probe_drho(theta, c);
    in.eigenvalue_derivs = {0.0, 0.0};  // the Bloch length depends on c only

    // In the gauge with real positive leading component the eigenvectors are
    // (w, offset_i e^{-i theta}) / n_i, so <w_i | d_theta w_j> =
    // -i offset_i offset_j / (n_i n_j).
    if (std::abs(c) > 1e-14) {
        const ProbeEigs p = probe_eigs(c);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                in.overlaps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Complex(0.0, -1.0) * p.offset[i] * p.offset[j] / (p.nrm[i] * p.nrm[j]);
    }
    return in;
}

QfiSpectralInputs probe_spectral_inputs_fd(double theta, double c, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("probe_spectral_inputs_fd: step must be > 0");
    QfiSpectralInputs in;
    in.decomp = eigen_decompose(phase_probe_density(theta, c));
    const auto plus = eigen_decompose(phase_probe_density(theta + step, c));
    const auto minus = eigen_decompose(phase_probe_density(theta - step, c));

    const DensityMatrix2 rp = phase_probe_density(theta + step, c);
    const DensityMatrix2 rm = phase_probe_density(theta - step, c);
    in.drho = (1.0 / (2.0 * step)) * (rp.m - rm.m);

    // central differences cannot resolve derivatives below their own rounding
    // floor ~eps/step; values under it are noise and are zeroed
    const double noise_floor = 16.0 * std::numeric_limits<double>::epsilon() / step;
    for (int i = 0; i < 2; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        double deriv = (plus.eigenvalues[iu] - minus.eigenvalues[iu]) / (2.0 * step);
        if (std::abs(deriv) < noise_floor) deriv = 0.0;
        in.eigenvalue_derivs[iu] = deriv;
        for (int j = 0; j < 2; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const Vec2 dv{(plus.eigenvectors[ju].a - minus.eigenvectors[ju].a) / (2.0 * step),
                          (plus.eigenvectors[ju].b - minus.eigenvectors[ju].b) / (2.0 * step)};
            in.overlaps[iu][ju] = dot(in.decomp.eigenvectors[iu], dv);
        }
    }
    return in;
}

double spectral_inputs_discrepancy(const QfiSpectralInputs& a, const QfiSpectralInputs& b) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        worst = std::max(worst, std::abs(a.eigenvalue_derivs[iu] - b.eigenvalue_derivs[iu]));
        for (int j = 0; j < 2; ++j) {
            if (i == j) continue;  // diagonal overlaps are gauge, not physics
            const auto ju = static_cast<std::size_t>(j);
            worst = std::max(worst,
                             std::abs(std::abs(a.overlaps[iu][ju]) - std::abs(b.overlaps[iu][ju])));
        }
    }
    return worst;
}

QfiResult qfi_spectral(const QfiSpectralInputs& inputs) {
    double value = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const double lam = inputs.decomp.eigenvalues[iu];
        const double dlam = inputs.eigenvalue_derivs[iu];
        if (lam < 1e-14 && std::abs(dlam) < 1e-12) continue;  // 0/0 convention
        value += dlam * dlam / lam;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == j) continue;
            const auto iu = static_cast<std::size_t>(i);
            const auto ju = static_cast<std::size_t>(j);
            const double li = inputs.decomp.eigenvalues[iu];
            const double lj = inputs.decomp.eigenvalues[ju];
            if (li + lj <= 1e-14) continue;
            const double gap = li - lj;
            value += 2.0 * gap * gap / (li + lj) * std::norm(inputs.overlaps[iu][ju]);
        }
    return {value, -1.0, 0};
}

QfiResult qfi_analytic(const ReservoirSpec& spec, const EnsembleSpec& ens, double t) {
    const double c = amplitude_closed_form(spec, ens, t);
    return {c * c, t, ens.n_qubits};
}

double qfi_asymptote(const EnsembleSpec& ens) {
    const double c = amplitude_asymptote(ens);
    return c * c;
}

double cramer_rao_bound(const QfiResult& qfi, long n_trials) {
    if (n_trials < 1) throw std::invalid_argument("cramer_rao_bound: n_trials must be >= 1");
    if (qfi.value <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (static_cast<double>(n_trials) * qfi.value);
}

}  // namespace cbath
