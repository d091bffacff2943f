#pragma once
// density_matrix.hpp: dense 2x2 complex algebra for one-qubit states and the
// closed-form Hermitian eigendecomposition used by the QFI and GP engines.
//
// Basis order is (|1>, |0>): index 0 is the excited state, so e00 is the
// excited population and e01 the coherence <1|rho|0>.

#include <array>
#include <complex>

namespace cbath {

using Complex = std::complex<double>;

struct Vec2 {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
};

/// Inner product, conjugate-linear in the first argument.
inline Complex dot(const Vec2& x, const Vec2& y) {
    return std::conj(x.a) * y.a + std::conj(x.b) * y.b;
}

inline double norm(const Vec2& x) { return std::sqrt(std::abs(dot(x, x))); }

struct Mat2 {
    Complex e00{0.0, 0.0}, e01{0.0, 0.0};
    Complex e10{0.0, 0.0}, e11{0.0, 0.0};

    static Mat2 identity() { return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }
    static Mat2 outer(const Vec2& x, const Vec2& y);  // |x><y|

    Mat2 adjoint() const { return {std::conj(e00), std::conj(e10), std::conj(e01), std::conj(e11)}; }
    Complex trace() const { return e00 + e11; }
    double hermiticity_defect() const;  // max |M - M^dagger| entry
};

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(Complex s, const Mat2& x);
Mat2 operator*(double s, const Mat2& x);
Vec2 operator*(const Mat2& m, const Vec2& x);

/// max entrywise |x - y|
double max_abs_diff(const Mat2& x, const Mat2& y);

/// One-qubit density matrix. Construction checks hermiticity and unit trace
/// to 1e-12 and eigenvalues >= -1e-12.
struct DensityMatrix2 {
    Mat2 m;

    DensityMatrix2() : m(Mat2::identity()) { m.e00 = 0.0; }  // ground state
    explicit DensityMatrix2(const Mat2& mat);

    static DensityMatrix2 from_pure(Complex excited_amp, Complex ground_amp);

    double excited_population() const { return m.e00.real(); }
    Complex coherence() const { return m.e01; }  // <1|rho|0>

    /// Bloch components (x, y, z) with z = rho11 - rho00.
    std::array<double, 3> bloch() const;
};

/// Eigenvalues in descending order and orthonormal eigenvectors, gauge-fixed
/// so the first component of magnitude above 1e-12 is real positive. At exact
/// degeneracy (maximally mixed state) the computational basis is returned.
struct SpectralDecomposition {
    std::array<double, 2> eigenvalues{};
    std::array<Vec2, 2> eigenvectors{};
};

SpectralDecomposition eigen_decompose(const DensityMatrix2& rho);

/// sum_i lambda_i |w_i><w_i|
Mat2 reconstruct(const SpectralDecomposition& decomp);

/// Rotate the vector's phase so its first component of magnitude > 1e-12 is
/// real positive.
Vec2 gauge_fix(const Vec2& v);

}  // namespace cbath
