#pragma once
// qfi.hpp: reduced density matrix of the watched qubit, quantum Fisher
// information for phase estimation by two independent routes (the spectral
// two-sum formula and the closed-form amplitude square), the symmetric
// logarithmic derivative, and Cramer-Rao bounds.

#include <array>

#include "cbath/density_matrix.hpp"
#include "cbath/model.hpp"

namespace cbath {

struct QfiResult {
    double value = 0.0;        ///< in [0, 1] for this model
    double channel_time = -1;  ///< -1 when the value is not tied to a time
    int n_qubits = 0;          ///< 0 when not tied to an ensemble
};

/// Amplitude-damping map of the shared-reservoir channel applied to an
/// initial state with entries (rho11(0), rho00(0), rho10(0)):
///   [[rho11 |c|^2, rho10 c], [conj, rho00 + rho11 (1 - |c|^2)]].
DensityMatrix2 reduced_density_matrix(double rho11_0, double rho00_0, Complex rho10_0, Complex c);

/// Phase gate U(theta) on the optimal probe (|0> + |1>)/sqrt(2), then the
/// channel: diagonal (c^2/2, 1 - c^2/2), off-diagonal (c/2) e^{i theta}.
DensityMatrix2 phase_probe_density(double theta, double c);

/// Analytic d rho / d theta of the probe family.
Mat2 phase_probe_drho(double theta, double c);

struct SldResult {
    Mat2 L;
    bool rank_deficient = false;  ///< an eigenvalue-pair denominator vanished
};

/// Symmetric logarithmic derivative from L_ij = 2 (drho)_ij / (lambda_i + lambda_j)
/// in the eigenbasis; elements whose denominator falls below 1e-14 are zeroed.
SldResult sld_operator(const SpectralDecomposition& decomp, const Mat2& drho);

/// Tr[rho L^2]
double qfi_from_sld(const DensityMatrix2& rho, const Mat2& L);

/// Everything the spectral QFI formula consumes. overlaps[i][j] = <w_i | d_theta w_j>.
struct QfiSpectralInputs {
    SpectralDecomposition decomp;
    Mat2 drho;
    std::array<double, 2> eigenvalue_derivs{};
    std::array<std::array<Complex, 2>, 2> overlaps{};
};

/// Inputs for the probe family with the eigensystem differentiated analytically.
QfiSpectralInputs probe_spectral_inputs(double theta, double c);

/// Inputs for the probe family with central finite differences (default step 1e-6).
QfiSpectralInputs probe_spectral_inputs_fd(double theta, double c, double step = 1e-6);

/// Largest discrepancy between two input sets (eigenvalue derivatives and
/// off-diagonal overlap magnitudes); used to report analytic-vs-FD drift.
double spectral_inputs_discrepancy(const QfiSpectralInputs& a, const QfiSpectralInputs& b);

/// QFI = sum_i (d lambda_i)^2 / lambda_i
///     + 2 sum_{i != j} (lambda_i - lambda_j)^2 / (lambda_i + lambda_j) |<w_i|d w_j>|^2.
/// First-sum terms with lambda_i < 1e-14 are dropped when |d lambda_i| < 1e-12.
QfiResult qfi_spectral(const QfiSpectralInputs& inputs);

/// QFI(theta) = C(t)^2: the square of the closed-form amplitude. Independent
/// of theta.
QfiResult qfi_analytic(const ReservoirSpec& spec, const EnsembleSpec& ens, double t);

/// t -> infinity limit ((N-1)/N)^2.
double qfi_asymptote(const EnsembleSpec& ens);

/// Cramer-Rao variance lower bound 1 / (n_trials * QFI); +infinity when the
/// information vanishes.
double cramer_rao_bound(const QfiResult& qfi, long n_trials = 1);

}  // namespace cbath
