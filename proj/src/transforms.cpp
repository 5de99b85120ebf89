#include "channelforge/transforms.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "channelforge/eig.hpp"
#include "channelforge/errors.hpp"

namespace channelforge {

namespace {

// The duality permutation Lambda[(m,u),(n,v)] = S[(v,u),(n,m)] is the
// row-reshuffle index map; it is its own inverse, so one helper serves both
// directions.
CMatrix duality_reshuffle(const CMatrix& m, std::size_t dx, std::size_t dy) {
    return reshuffle_row(m, BipartiteShape(dx, dy));
}

}  // namespace

ChoiMatrix superop_to_choi(const SuperOp& s) {
    const SuperOp sc = superop_change_basis(s, VecConvention::col());
    return ChoiMatrix(duality_reshuffle(sc.mat(), sc.dx(), sc.dy()), ChoiConvention::col_lambda,
                      sc.dx(), sc.dy());
}

SuperOp choi_to_superop(const ChoiMatrix& lam) {
    const ChoiMatrix col = lam.to_col();
    return SuperOp(duality_reshuffle(col.mat(), col.dx(), col.dy()), VecConvention::col(),
                   col.dx(), col.dy());
}

SuperOp kraus_to_superop(const KrausRep& k) {
    CMatrix s(k.dy() * k.dy(), k.dx() * k.dx());
    for (const auto& op : k.ops()) {
        s += kron(conjugate(op), op);
    }
    return SuperOp(std::move(s), VecConvention::col(), k.dx(), k.dy());
}

SuperOp sysenv_to_superop(const StinespringRep& se) {
    CMatrix s(se.dy() * se.dy(), se.dx() * se.dx());
    for (std::size_t alpha = 0; alpha < se.denv(); ++alpha) {
        const CMatrix k = se.kraus_block(alpha);
        s += kron(conjugate(k), k);
    }
    return SuperOp(std::move(s), VecConvention::col(), se.dx(), se.dy());
}

ChoiMatrix kraus_to_choi(const KrausRep& k) {
    const std::size_t d = k.dx() * k.dy();
    CMatrix lam(d, d);
    for (const auto& op : k.ops()) {
        const CVector v = vec(op, VecConvention::col());
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                lam(r, c) += v[r] * std::conj(v[c]);
            }
        }
    }
    return ChoiMatrix(std::move(lam), ChoiConvention::col_lambda, k.dx(), k.dy());
}

ChoiMatrix sysenv_to_choi(const StinespringRep& se) {
    const std::size_t dx = se.dx();
    const std::size_t dy = se.dy();
    CMatrix lam(dx * dy, dx * dy);
    for (std::size_t i = 0; i < dx; ++i) {
        for (std::size_t j = 0; j < dx; ++j) {
            CMatrix eij(dx, dx);
            eij(i, j) = 1.0;
            const CMatrix block = apply_sysenv(se, DensityMatrix(std::move(eij), false)).mat();
            for (std::size_t u = 0; u < dy; ++u) {
                for (std::size_t v = 0; v < dy; ++v) {
                    lam(i * dy + u, j * dy + v) = block(u, v);
                }
            }
        }
    }
    return ChoiMatrix(std::move(lam), ChoiConvention::col_lambda, dx, dy);
}

KrausRep choi_to_kraus(const ChoiMatrix& lam, double rank_tol, double tol) {
    const ChoiMatrix col = lam.to_col();
    if (hp_defect(col) > tol * std::max(1.0, col.mat().frobenius_norm())) {
        throw NotCPError("choi_to_kraus: Choi matrix is not Hermitian", 0.0);
    }
    const EigenDecomposition eig = eig_hermitian(col.mat(), tol);
    const double floor = -tol * std::max(1.0, col.mat().frobenius_norm());
    const double min_eig = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    if (min_eig < floor) {
        throw NotCPError("choi_to_kraus: map is not completely positive; most negative Choi "
                         "eigenvalue is " +
                             std::to_string(min_eig),
                         min_eig);
    }
    const double max_eig = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    std::vector<CMatrix> ops;
    for (std::size_t a = 0; a < eig.eigenvalues.size(); ++a) {
        const double lambda_sq = eig.eigenvalues[a];
        if (lambda_sq <= rank_tol * max_eig) break;  // eigenvalues are descending
        CVector scaled = eig.eigenvectors[a];
        const double lambda = std::sqrt(lambda_sq);
        for (auto& e : scaled) e *= lambda;
        ops.push_back(devec(scaled, VecConvention::col(), col.dx(), col.dy()));
    }
    if (ops.empty()) {
        // Zero channel: represent it by a single zero operator so the
        // Kraus list stays nonempty.
        ops.emplace_back(col.dy(), col.dx());
    }
    return KrausRep(std::move(ops));
}

KrausRep sysenv_to_kraus(const StinespringRep& se, const std::optional<CMatrix>& env_basis,
                         double tol) {
    std::vector<CMatrix> ops;
    ops.reserve(se.denv());
    if (!env_basis) {
        for (std::size_t alpha = 0; alpha < se.denv(); ++alpha) {
            ops.push_back(se.kraus_block(alpha));
        }
        return KrausRep(std::move(ops));
    }
    const CMatrix& b = *env_basis;
    if (b.rows() != se.denv() || b.cols() != se.denv()) {
        throw ShapeError("sysenv_to_kraus: environment basis must be denv x denv");
    }
    if ((adjoint(b) * b - CMatrix::identity(se.denv())).frobenius_norm() >
        tol * std::max(1.0, static_cast<double>(se.denv()))) {
        throw DomainError("sysenv_to_kraus: environment basis is not orthonormal");
    }
    for (std::size_t alpha = 0; alpha < se.denv(); ++alpha) {
        // K_a = <b_a|A acting on the environment factor.
        CMatrix k(se.dy(), se.dx());
        for (std::size_t z = 0; z < se.denv(); ++z) {
            const complexd w = std::conj(b(z, alpha));
            if (w == complexd(0.0)) continue;
            for (std::size_t i = 0; i < se.dy(); ++i) {
                for (std::size_t j = 0; j < se.dx(); ++j) {
                    k(i, j) += w * se.a()(i * se.denv() + z, j);
                }
            }
        }
        ops.push_back(std::move(k));
    }
    return KrausRep(std::move(ops));
}

StinespringRep kraus_to_stinespring(const KrausRep& k, const std::optional<CVector>& v0,
                                    double tol) {
    const std::size_t denv = k.count();
    CVector env0;
    if (v0) {
        if (v0->size() != denv) {
            throw ShapeError("kraus_to_stinespring: v0 must have dimension equal to the "
                             "number of Kraus operators");
        }
        if (std::abs(vec_norm(*v0) - 1.0) > tol) {
            throw DomainError("kraus_to_stinespring: v0 is not a unit vector");
        }
        env0 = *v0;
    } else {
        env0.assign(denv, complexd(0.0));
        env0[0] = 1.0;
    }

    CMatrix a(k.dy() * denv, k.dx());
    for (std::size_t alpha = 0; alpha < denv; ++alpha) {
        const CMatrix& op = k.op(alpha);
        for (std::size_t i = 0; i < k.dy(); ++i) {
            for (std::size_t j = 0; j < k.dx(); ++j) {
                a(i * denv + alpha, j) = op(i, j);
            }
        }
    }
    // U0 = sum_a K_a (x) |a><v0|
    CMatrix u0(k.dy() * denv, k.dx() * denv);
    for (std::size_t alpha = 0; alpha < denv; ++alpha) {
        const CMatrix& op = k.op(alpha);
        for (std::size_t i = 0; i < k.dy(); ++i) {
            for (std::size_t j = 0; j < k.dx(); ++j) {
                const complexd kij = op(i, j);
                if (kij == complexd(0.0)) continue;
                for (std::size_t z = 0; z < denv; ++z) {
                    u0(i * denv + alpha, j * denv + z) += kij * std::conj(env0[z]);
                }
            }
        }
    }
    return StinespringRep(std::move(a), k.dx(), k.dy(), denv, std::move(env0), std::move(u0),
                          tol);
}

ChiMatrix choi_to_chi(const ChoiMatrix& lam, const OperatorBasis& basis) {
    const ChoiMatrix col = lam.to_col();
    if (basis.dx() != col.dx() || basis.dy() != col.dy()) {
        throw ShapeError("choi_to_chi: basis dimensions do not match the channel");
    }
    const CMatrix t = basis_change_op(VecConvention::col(), VecConvention::in_basis(basis),
                                      col.dx(), col.dy());
    return ChiMatrix(t * col.mat() * adjoint(t), basis);
}

ChoiMatrix chi_to_choi(const ChiMatrix& chi) {
    const CMatrix t = basis_change_op(VecConvention::col(), VecConvention::in_basis(chi.basis()),
                                      chi.dx(), chi.dy());
    return ChoiMatrix(adjoint(t) * chi.mat() * t, ChoiConvention::col_lambda, chi.dx(),
                      chi.dy());
}

ChiMatrix chi_change_basis(const ChiMatrix& chi, const OperatorBasis& new_basis) {
    if (new_basis.dx() != chi.dx() || new_basis.dy() != chi.dy()) {
        throw ShapeError("chi_change_basis: basis dimensions do not match the channel");
    }
    const CMatrix t = basis_change_op(VecConvention::in_basis(chi.basis()),
                                      VecConvention::in_basis(new_basis), chi.dx(), chi.dy());
    return ChiMatrix(t * chi.mat() * adjoint(t), new_basis);
}

SuperOp superop_change_basis(const SuperOp& s, const VecConvention& new_conv) {
    if (s.conv() == new_conv) return s;
    const CMatrix t_in = basis_change_op(s.conv(), new_conv, s.dx(), s.dx());
    const CMatrix t_out = basis_change_op(s.conv(), new_conv, s.dy(), s.dy());
    return SuperOp(t_out * s.mat() * adjoint(t_in), new_conv, s.dx(), s.dy());
}

}  // namespace channelforge
