#pragma once

#include <vector>

#include "channelforge/matrix.hpp"

namespace channelforge {

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are real and sorted descending. Eigenvectors are unit-norm,
/// mutually orthonormal, and phase-fixed so that the largest-magnitude
/// component of each vector is real and positive, which makes the
/// decomposition reproducible across runs (up to degenerate subspaces, whose
/// internal basis is arbitrary).
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<CVector> eigenvectors;

    /// Rebuild sum_k lambda_k v_k v_k^dagger.
    CMatrix reconstruct() const;
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Requires ||h - h^dagger||_F <= tol * ||h||_F (DomainError otherwise) and
/// throws NumericError if the sweeps fail to converge.
EigenDecomposition eig_hermitian(const CMatrix& h, double tol = kDefaultTol);

}  // namespace channelforge
