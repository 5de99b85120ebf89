#include <doctest.h>

#include <cmath>
#include <random>

#include "channelforge/eig.hpp"
#include "channelforge/errors.hpp"
#include "test_helpers.hpp"

using namespace channelforge;
using testing::random_hermitian;

TEST_CASE("diagonal matrix") {
    const CMatrix h{{3.0, 0.0}, {0.0, 1.0}};
    const EigenDecomposition eig = eig_hermitian(h);
    CHECK(eig.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(eig.eigenvectors[0][0] - complexd(1.0)) < 1e-14);
    CHECK(std::abs(eig.eigenvectors[1][1] - complexd(1.0)) < 1e-14);
}

TEST_CASE("pauli x") {
    const CMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    const EigenDecomposition eig = eig_hermitian(x);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Phase convention makes the dominant component real positive; for ties
    // the first component wins, so both vectors start with +1/sqrt(2).
    CHECK(std::abs(eig.eigenvectors[0][0] - complexd(inv_sqrt2)) < 1e-14);
    CHECK(std::abs(eig.eigenvectors[0][1] - complexd(inv_sqrt2)) < 1e-14);
    CHECK(std::abs(eig.eigenvectors[1][0] - complexd(inv_sqrt2)) < 1e-14);
    CHECK(std::abs(eig.eigenvectors[1][1] - complexd(-inv_sqrt2)) < 1e-14);
}

TEST_CASE("random hermitian: reconstruction, orthonormality, trace") {
    std::mt19937_64 gen(21);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix h = random_hermitian(gen, 6);
        const EigenDecomposition eig = eig_hermitian(h);
        const double scale = h.frobenius_norm();

        CHECK((eig.reconstruct() - h).frobenius_norm() <= 1e-10 * scale);

        for (std::size_t a = 0; a < 6; ++a) {
            for (std::size_t b = 0; b < 6; ++b) {
                const complexd g = inner(eig.eigenvectors[a], eig.eigenvectors[b]);
                CHECK(std::abs(g - (a == b ? complexd(1.0) : complexd(0.0))) < 1e-12);
            }
        }

        double sum = 0.0;
        for (double v : eig.eigenvalues) sum += v;
        CHECK(sum == doctest::Approx(trace(h).real()).epsilon(1e-12));

        for (std::size_t k = 0; k + 1 < eig.eigenvalues.size(); ++k) {
            CHECK(eig.eigenvalues[k] >= eig.eigenvalues[k + 1]);
        }
    }
}

TEST_CASE("eigenvalue equation residual") {
    std::mt19937_64 gen(22);
    const CMatrix h = random_hermitian(gen, 8);
    const EigenDecomposition eig = eig_hermitian(h);
    for (std::size_t k = 0; k < 8; ++k) {
        CVector hv = h * eig.eigenvectors[k];
        for (std::size_t i = 0; i < 8; ++i) hv[i] -= eig.eigenvalues[k] * eig.eigenvectors[k][i];
        CHECK(vec_norm(hv) <= 1e-10 * h.frobenius_norm());
    }
}

TEST_CASE("degenerate spectrum spans the right subspace") {
    // I4 has a single eigenvalue; any orthonormal basis is fine, the
    // reconstruction is what must come back exact.
    const EigenDecomposition eig = eig_hermitian(CMatrix::identity(4));
    for (double v : eig.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((eig.reconstruct() - CMatrix::identity(4)).frobenius_norm() < 1e-13);
}

TEST_CASE("deterministic output") {
    std::mt19937_64 gen(23);
    const CMatrix h = random_hermitian(gen, 5);
    const EigenDecomposition a = eig_hermitian(h);
    const EigenDecomposition b = eig_hermitian(h);
    CHECK(a.eigenvalues == b.eigenvalues);
    for (std::size_t k = 0; k < 5; ++k) CHECK(a.eigenvectors[k] == b.eigenvectors[k]);
    // Dominant component of each vector is real and non-negative.
    for (const auto& v : a.eigenvectors) {
        double best = 0.0;
        complexd lead;
        for (const auto& e : v) {
            if (std::abs(e) > best) {
                best = std::abs(e);
                lead = e;
            }
        }
        CHECK(lead.imag() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(lead.real() > 0.0);
    }
}

TEST_CASE("rejects non-hermitian input") {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;  // strictly upper triangular
    CHECK_THROWS_AS(eig_hermitian(m), DomainError);
    CHECK_THROWS_AS(eig_hermitian(CMatrix(2, 3)), ShapeError);
}

TEST_CASE("zero matrix") {
    const EigenDecomposition eig = eig_hermitian(CMatrix(3, 3));
    for (double v : eig.eigenvalues) CHECK(v == 0.0);
    CHECK(eig.eigenvectors.size() == 3);
}
