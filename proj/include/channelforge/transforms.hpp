#pragma once

#include <optional>

#include "channelforge/representations.hpp"

namespace channelforge {

/// Reshuffling duality between superoperator and Choi matrix (col
/// conventions; other conventions are converted first). Self-inverse:
/// the same index permutation realizes both directions.
ChoiMatrix superop_to_choi(const SuperOp& s);
SuperOp choi_to_superop(const ChoiMatrix& lam);

/// S = sum_a conj(K_a) (x) K_a, col convention.
SuperOp kraus_to_superop(const KrausRep& k);

/// S = sum_a conj(<a|A) (x) (<a|A), summing over the computational
/// environment basis.
SuperOp sysenv_to_superop(const StinespringRep& se);

/// Lambda = sum_a vec(K_a) vec(K_a)^dagger, col-Lambda.
ChoiMatrix kraus_to_choi(const KrausRep& k);

/// Lambda = sum_ij |i><j| (x) E(|i><j|) with E evaluated through the
/// system-environment partial trace.
ChoiMatrix sysenv_to_choi(const StinespringRep& se);

/// Canonical Kraus set from the spectral decomposition of the Choi matrix:
/// K_a = lambda_a * devec(phi_a) for eigenvalues lambda_a^2 of Lambda.
/// Eigenvalues with lambda^2 <= rank_tol * max lambda^2 are dropped, so the
/// operator count equals the numerical rank. Throws NotCPError (with the
/// witness eigenvalue) if Lambda has a negative eigenvalue beyond tol.
KrausRep choi_to_kraus(const ChoiMatrix& lam, double rank_tol = 1e-12,
                       double tol = kDefaultTol);

/// K_a = <a|A for an orthonormal environment basis (default computational).
/// A custom basis is passed as a denv x denv matrix whose columns are the
/// basis vectors.
KrausRep sysenv_to_kraus(const StinespringRep& se,
                         const std::optional<CMatrix>& env_basis = std::nullopt,
                         double tol = kDefaultTol);

/// Stinespring dilation A = sum_a K_a (x) |a> with denv = count(k); also
/// stores the restricted unitary U0 = sum_a K_a (x) |a><v0| for the initial
/// environment state v0 (default |0>).
StinespringRep kraus_to_stinespring(const KrausRep& k,
                                    const std::optional<CVector>& v0 = std::nullopt,
                                    double tol = kDefaultTol);

/// chi = T Lambda T^dagger with T = basis_change_op(col, basis), so that
/// E(rho) = sum_ab chi_ab sigma_a rho sigma_b^dagger holds; the inverse is
/// conjugation by the adjoint. Eigenvalues are preserved.
ChiMatrix choi_to_chi(const ChoiMatrix& lam, const OperatorBasis& basis);
ChoiMatrix chi_to_choi(const ChiMatrix& chi);

/// chi^omega = T chi^sigma T^dagger with T = T_{sigma->omega}.
ChiMatrix chi_change_basis(const ChiMatrix& chi, const OperatorBasis& new_basis);

/// Re-express a superoperator in another vectorization convention:
/// S' = T_out S T_in^dagger. Basis-kind targets require a square channel.
SuperOp superop_change_basis(const SuperOp& s, const VecConvention& new_conv);

}  // namespace channelforge
