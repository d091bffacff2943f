#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cbath/density_matrix.hpp"

using namespace cbath;

namespace {

DensityMatrix2 random_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double x = uni(rng), y = uni(rng), z = uni(rng);
    const double len = std::sqrt(x * x + y * y + z * z);
    std::uniform_real_distribution<double> radius(0.0, 0.999);
    const double r = radius(rng);
    if (len > 0.0) {
        x *= r / len;
        y *= r / len;
        z *= r / len;
    }
    Mat2 m;
    m.e00 = 0.5 * (1.0 + z);
    m.e11 = 0.5 * (1.0 - z);
    m.e01 = Complex(0.5 * x, -0.5 * y);
    m.e10 = std::conj(m.e01);
    return DensityMatrix2(m);
}

}  // namespace

TEST_CASE("density matrix validation") {
    Mat2 not_hermitian = Mat2::identity();
    not_hermitian.e01 = Complex(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix2{not_hermitian}, std::invalid_argument);

    Mat2 bad_trace;
    bad_trace.e00 = 0.7;
    bad_trace.e11 = 0.7;
    CHECK_THROWS_AS(DensityMatrix2{bad_trace}, std::invalid_argument);

    Mat2 negative;
    negative.e00 = 0.5;
    negative.e11 = 0.5;
    negative.e01 = Complex(0.9, 0.0);
    negative.e10 = Complex(0.9, 0.0);
    CHECK_THROWS_AS(DensityMatrix2{negative}, std::invalid_argument);
}

TEST_CASE("eigen decomposition: maximally mixed") {
    Mat2 half = Mat2::identity();
    half.e00 = 0.5;
    half.e11 = 0.5;
    const SpectralDecomposition decomp = eigen_decompose(DensityMatrix2(half));
    CHECK(decomp.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(decomp.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-15));
    // degenerate convention: computational basis
    CHECK(std::abs(decomp.eigenvectors[0].a - 1.0) < 1e-15);
    CHECK(std::abs(decomp.eigenvectors[1].b - 1.0) < 1e-15);
}

TEST_CASE("eigen decomposition: pure |+> projector") {
    const DensityMatrix2 plus =
        DensityMatrix2::from_pure(Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0));
    const SpectralDecomposition decomp = eigen_decompose(plus);
    CHECK(decomp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(decomp.eigenvalues[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("eigen decomposition properties on random states") {
    std::mt19937 rng(75021);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix2 rho = random_state(rng);
        const SpectralDecomposition decomp = eigen_decompose(rho);

        CHECK(decomp.eigenvalues[0] >= decomp.eigenvalues[1]);
        CHECK(decomp.eigenvalues[0] + decomp.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

        // orthonormality
        CHECK(std::abs(dot(decomp.eigenvectors[0], decomp.eigenvectors[0]) - 1.0) < 1e-12);
        CHECK(std::abs(dot(decomp.eigenvectors[1], decomp.eigenvectors[1]) - 1.0) < 1e-12);
        CHECK(std::abs(dot(decomp.eigenvectors[0], decomp.eigenvectors[1])) < 1e-12);

        // reconstruction
        CHECK(max_abs_diff(reconstruct(decomp), rho.m) < 1e-12);

        // gauge: leading component real positive
        for (const Vec2& v : decomp.eigenvectors) {
            const Complex lead = std::abs(v.a) > 1e-12 ? v.a : v.b;
            CHECK(lead.real() > 0.0);
            CHECK(std::abs(lead.imag()) < 1e-12);
        }
    }
}

TEST_CASE("pure-state factory checks normalization") {
    CHECK_THROWS_AS(DensityMatrix2::from_pure(Complex(1.0, 0.0), Complex(0.5, 0.0)),
                    std::invalid_argument);
}
