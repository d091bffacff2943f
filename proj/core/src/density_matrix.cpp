#include "cbath/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbath {

Mat2 Mat2::outer(const Vec2& x, const Vec2& y) {
    return {x.a * std::conj(y.a), x.a * std::conj(y.b), x.b * std::conj(y.a), x.b * std::conj(y.b)};
}

double Mat2::hermiticity_defect() const {
    const double d0 = std::abs(e00 - std::conj(e00));
    const double d1 = std::abs(e11 - std::conj(e11));
    const double d2 = std::abs(e01 - std::conj(e10));
    return std::max({d0, d1, d2});
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.e00 + y.e00, x.e01 + y.e01, x.e10 + y.e10, x.e11 + y.e11};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.e00 - y.e00, x.e01 - y.e01, x.e10 - y.e10, x.e11 - y.e11};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.e00 * y.e00 + x.e01 * y.e10, x.e00 * y.e01 + x.e01 * y.e11,
            x.e10 * y.e00 + x.e11 * y.e10, x.e10 * y.e01 + x.e11 * y.e11};
}

Mat2 operator*(Complex s, const Mat2& x) { return {s * x.e00, s * x.e01, s * x.e10, s * x.e11}; }

Mat2 operator*(double s, const Mat2& x) { return Complex(s, 0.0) * x; }

Vec2 operator*(const Mat2& m, const Vec2& x) {
    return {m.e00 * x.a + m.e01 * x.b, m.e10 * x.a + m.e11 * x.b};
}

double max_abs_diff(const Mat2& x, const Mat2& y) {
    return std::max({std::abs(x.e00 - y.e00), std::abs(x.e01 - y.e01), std::abs(x.e10 - y.e10),
                     std::abs(x.e11 - y.e11)});
}

DensityMatrix2::DensityMatrix2(const Mat2& mat) : m(mat) {
    if (m.hermiticity_defect() > 1e-12)
        throw std::invalid_argument("DensityMatrix2: matrix is not Hermitian to 1e-12");
    if (std::abs(m.trace() - 1.0) > 1e-12)
        throw std::invalid_argument("DensityMatrix2: trace differs from 1 by more than 1e-12");
    // eigenvalues (1 +- r)/2; positivity means r <= 1 up to the tolerance
    const auto r = bloch();
    const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (0.5 * (1.0 - len) < -1e-12)
        throw std::invalid_argument("DensityMatrix2: negative eigenvalue beyond 1e-12");
}

DensityMatrix2 DensityMatrix2::from_pure(Complex excited_amp, Complex ground_amp) {
    const double nrm2 = std::norm(excited_amp) + std::norm(ground_amp);
    if (std::abs(nrm2 - 1.0) > 1e-12)
        throw std::invalid_argument("DensityMatrix2::from_pure: amplitudes are not normalized");
    Mat2 m{excited_amp * std::conj(excited_amp), excited_amp * std::conj(ground_amp),
           ground_amp * std::conj(excited_amp), ground_amp * std::conj(ground_amp)};
    return DensityMatrix2(m);
}

std::array<double, 3> DensityMatrix2::bloch() const {
    return {2.0 * m.e01.real(), -2.0 * m.e01.imag(), (m.e00 - m.e11).real()};
}

Vec2 gauge_fix(const Vec2& v) {
    Complex lead = v.a;
    if (std::abs(lead) <= 1e-12) lead = v.b;
    const double mag = std::abs(lead);
    if (mag <= 1e-12) return v;
    const Complex phase = std::conj(lead) / mag;
    return {phase * v.a, phase * v.b};
}

SpectralDecomposition eigen_decompose(const DensityMatrix2& rho) {
    const auto r = rho.bloch();
    const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);

    SpectralDecomposition decomp;
    decomp.eigenvalues = {0.5 * (1.0 + len), 0.5 * (1.0 - len)};
    if (len < 1e-14) {
        decomp.eigenvectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
        return decomp;
    }

    // spinor of the Bloch direction: (cos(beta/2), sin(beta/2) e^{i phi})
    const double nz = r[2] / len;
    const double cos_half = std::sqrt(std::max(0.0, 0.5 * (1.0 + nz)));
    const double sin_half = std::sqrt(std::max(0.0, 0.5 * (1.0 - nz)));
    const double nxy = std::hypot(r[0], r[1]);
    const Complex azimuth = nxy > 0.0 ? Complex(r[0] / nxy, r[1] / nxy) : Complex(1.0, 0.0);

    decomp.eigenvectors[0] = gauge_fix(Vec2{cos_half, sin_half * azimuth});
    decomp.eigenvectors[1] = gauge_fix(Vec2{-sin_half, cos_half * azimuth});
    return decomp;
}

Mat2 reconstruct(const SpectralDecomposition& decomp) {
    return decomp.eigenvalues[0] * Mat2::outer(decomp.eigenvectors[0], decomp.eigenvectors[0]) +
           decomp.eigenvalues[1] * Mat2::outer(decomp.eigenvectors[1], decomp.eigenvectors[1]);
}

}  // namespace cbath
