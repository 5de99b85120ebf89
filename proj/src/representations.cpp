#include "channelforge/representations.hpp"

#include <cmath>
#include <string>

#include "channelforge/eig.hpp"
#include "channelforge/errors.hpp"

namespace channelforge {

namespace {

double scaled_tol(double tol, double norm) { return tol * std::max(1.0, norm); }

double hermiticity_defect(const CMatrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            s += std::norm(m(r, c) - std::conj(m(c, r)));
        }
    }
    return std::sqrt(s);
}

CMatrix hermitian_part(const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    return out;
}

double min_eigenvalue_of_hermitian_part(const CMatrix& m) {
    const EigenDecomposition eig = eig_hermitian(hermitian_part(m));
    return eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
}

}  // namespace

// --- DensityMatrix -----------------------------------------------------------

DensityMatrix::DensityMatrix(CMatrix mat, bool validate, double tol) : mat_(std::move(mat)) {
    if (!mat_.is_square() || mat_.rows() == 0) {
        throw ShapeError("DensityMatrix: matrix must be square and non-empty");
    }
    if (!mat_.all_finite()) {
        throw DomainError("DensityMatrix: entries must be finite");
    }
    if (!validate) return;
    const double scale = scaled_tol(tol, mat_.frobenius_norm());
    if (hermiticity_defect(mat_) > scale) {
        throw DomainError("DensityMatrix: not Hermitian within tolerance");
    }
    if (min_eigenvalue_of_hermitian_part(mat_) < -scale) {
        throw DomainError("DensityMatrix: negative eigenvalue beyond tolerance");
    }
    if (std::abs(trace(mat_) - complexd(1.0)) > scale) {
        throw DomainError("DensityMatrix: trace differs from 1 beyond tolerance");
    }
}

// --- KrausRep ----------------------------------------------------------------

KrausRep::KrausRep(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw DomainError("KrausRep: need at least one Kraus operator");
    }
    dy_ = ops_.front().rows();
    dx_ = ops_.front().cols();
    if (dx_ == 0 || dy_ == 0) {
        throw ShapeError("KrausRep: operators must be non-empty");
    }
    for (const auto& k : ops_) {
        if (k.rows() != dy_ || k.cols() != dx_) {
            throw ShapeError("KrausRep: operators have inconsistent shapes");
        }
    }
}

// --- SuperOp -----------------------------------------------------------------

SuperOp::SuperOp(CMatrix mat, VecConvention conv, std::size_t dx, std::size_t dy)
    : mat_(std::move(mat)), conv_(std::move(conv)), dx_(dx), dy_(dy) {
    if (dx_ == 0 || dy_ == 0) {
        throw DomainError("SuperOp: dimensions must be positive");
    }
    if (mat_.rows() != dy_ * dy_ || mat_.cols() != dx_ * dx_) {
        throw ShapeError("SuperOp: matrix must be dy^2 x dx^2");
    }
    if (conv_.kind() == VecConvention::Kind::basis) {
        if (dx_ != dy_) {
            throw ConventionError(
                "SuperOp: a basis-kind convention needs separate input and output bases for "
                "rectangular channels; only col/row are supported when dx != dy");
        }
        if (conv_.basis().dx() != dx_ || conv_.basis().dy() != dx_) {
            throw ShapeError("SuperOp: convention basis has wrong dimensions");
        }
    }
}

// --- ChoiMatrix --------------------------------------------------------------

ChoiMatrix::ChoiMatrix(CMatrix mat, ChoiConvention conv, std::size_t dx, std::size_t dy)
    : mat_(std::move(mat)), conv_(conv), dx_(dx), dy_(dy) {
    if (dx_ == 0 || dy_ == 0) {
        throw DomainError("ChoiMatrix: dimensions must be positive");
    }
    const std::size_t d = dx_ * dy_;
    if (mat_.rows() != d || mat_.cols() != d) {
        throw ShapeError("ChoiMatrix: matrix must be (dx*dy) x (dx*dy)");
    }
}

ChoiMatrix ChoiMatrix::to_col() const {
    if (conv_ == ChoiConvention::col_lambda) return *this;
    // Row-Lambda lives on Y (x) X; the bipartite swap brings it back.
    return ChoiMatrix(bipartite_swap(mat_, BipartiteShape(dy_, dx_)),
                      ChoiConvention::col_lambda, dx_, dy_);
}

// --- ChiMatrix ---------------------------------------------------------------

ChiMatrix::ChiMatrix(CMatrix mat, OperatorBasis basis)
    : mat_(std::move(mat)), basis_(std::move(basis)) {
    const std::size_t d = basis_.size();
    if (mat_.rows() != d || mat_.cols() != d) {
        throw ShapeError("ChiMatrix: matrix must be DxD with D = dx*dy of the basis");
    }
}

// --- StinespringRep ----------------------------------------------------------

StinespringRep::StinespringRep(CMatrix a, std::size_t dx, std::size_t dy, std::size_t denv,
                               std::optional<CVector> env_state,
                               std::optional<CMatrix> restricted_unitary, double tol)
    : a_(std::move(a)),
      dx_(dx),
      dy_(dy),
      denv_(denv),
      env_state_(std::move(env_state)),
      restricted_unitary_(std::move(restricted_unitary)) {
    if (dx_ == 0 || dy_ == 0 || denv_ == 0) {
        throw DomainError("StinespringRep: dimensions must be positive");
    }
    if (denv_ > dx_ * dy_) {
        throw DomainError("StinespringRep: environment dimension exceeds dim L(X,Y) = " +
                          std::to_string(dx_ * dy_));
    }
    if (a_.rows() != dy_ * denv_ || a_.cols() != dx_) {
        throw ShapeError("StinespringRep: operator must be (dy*denv) x dx");
    }
    if (env_state_) {
        if (env_state_->size() != denv_) {
            throw ShapeError("StinespringRep: environment state has wrong dimension");
        }
        if (std::abs(vec_norm(*env_state_) - 1.0) > scaled_tol(tol, 1.0)) {
            throw DomainError("StinespringRep: environment state is not a unit vector");
        }
    }
    if (restricted_unitary_ &&
        (restricted_unitary_->rows() != dy_ * denv_ || restricted_unitary_->cols() != dx_ * denv_)) {
        throw ShapeError("StinespringRep: restricted unitary has wrong shape");
    }
}

StinespringRep StinespringRep::from_unitary(const CMatrix& u, const CVector& v0, double tol) {
    if (!u.is_square() || v0.empty() || u.rows() % v0.size() != 0) {
        throw ShapeError("StinespringRep: unitary must be square on X (x) Z");
    }
    const std::size_t denv = v0.size();
    const std::size_t d = u.rows() / denv;
    // A = U (1_X (x) |v0>)
    CMatrix embed(d * denv, d);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t z = 0; z < denv; ++z) embed(x * denv + z, x) = v0[z];
    }
    CMatrix a = u * embed;
    // U restricted to the |v0> subspace of the environment: U0 = A (1_X (x) <v0|).
    CMatrix proj(d, d * denv);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t z = 0; z < denv; ++z) proj(x, x * denv + z) = std::conj(v0[z]);
    }
    CMatrix u0 = a * proj;
    return StinespringRep(std::move(a), d, d, denv, v0, std::move(u0), tol);
}

CMatrix StinespringRep::kraus_block(std::size_t alpha) const {
    CMatrix k(dy_, dx_);
    for (std::size_t i = 0; i < dy_; ++i) {
        for (std::size_t j = 0; j < dx_; ++j) k(i, j) = a_(i * denv_ + alpha, j);
    }
    return k;
}

// --- Evolution ---------------------------------------------------------------

DensityMatrix apply_kraus(const KrausRep& k, const DensityMatrix& rho) {
    if (rho.dim() != k.dx()) {
        throw ShapeError("apply_kraus: state dimension does not match dx");
    }
    CMatrix out(k.dy(), k.dy());
    for (const auto& op : k.ops()) {
        out += op * rho.mat() * adjoint(op);
    }
    return DensityMatrix(std::move(out), false);
}

DensityMatrix apply_superop(const SuperOp& s, const DensityMatrix& rho) {
    if (rho.dim() != s.dx()) {
        throw ShapeError("apply_superop: state dimension does not match dx");
    }
    const VecConvention& conv = s.conv();
    const CVector in = vec(rho.mat(), conv);
    const CVector out = s.mat() * in;
    return DensityMatrix(devec(out, conv, s.dy(), s.dy()), false);
}

DensityMatrix apply_choi(const ChoiMatrix& lam, const DensityMatrix& rho) {
    if (rho.dim() != lam.dx()) {
        throw ShapeError("apply_choi: state dimension does not match dx");
    }
    const ChoiMatrix col = lam.to_col();
    const CMatrix lifted = kron(transpose(rho.mat()), CMatrix::identity(col.dy())) * col.mat();
    return DensityMatrix(partial_trace_x(lifted, BipartiteShape(col.dx(), col.dy())), false);
}

DensityMatrix apply_chi(const ChiMatrix& chi, const DensityMatrix& rho) {
    if (rho.dim() != chi.dx()) {
        throw ShapeError("apply_chi: state dimension does not match dx");
    }
    const OperatorBasis& basis = chi.basis();
    CMatrix out(chi.dy(), chi.dy());
    for (std::size_t alpha = 0; alpha < basis.size(); ++alpha) {
        const CMatrix left = basis.element(alpha) * rho.mat();
        for (std::size_t beta = 0; beta < basis.size(); ++beta) {
            const complexd c = chi.mat()(alpha, beta);
            if (c == complexd(0.0)) continue;
            out += c * (left * adjoint(basis.element(beta)));
        }
    }
    return DensityMatrix(std::move(out), false);
}

DensityMatrix apply_sysenv(const StinespringRep& se, const DensityMatrix& rho) {
    if (rho.dim() != se.dx()) {
        throw ShapeError("apply_sysenv: state dimension does not match dx");
    }
    const CMatrix joint = se.a() * rho.mat() * adjoint(se.a());
    return DensityMatrix(partial_trace_y(joint, BipartiteShape(se.dy(), se.denv())), false);
}

// --- Predicates --------------------------------------------------------------

namespace {

SuperOp superop_in_col(const SuperOp& s) {
    if (s.conv().is_col()) return s;
    // S_c = T^dagger S_sigma T with T = T_{c->sigma}, applied per side.
    const CMatrix t_in = basis_change_op(VecConvention::col(), s.conv(), s.dx(), s.dx());
    const CMatrix t_out = basis_change_op(VecConvention::col(), s.conv(), s.dy(), s.dy());
    return SuperOp(adjoint(t_out) * s.mat() * t_in, VecConvention::col(), s.dx(), s.dy());
}

ChoiMatrix choi_of_chi(const ChiMatrix& chi) {
    // Lambda = T^dagger chi T with T = T_{c->sigma}; see transforms.
    const CMatrix t =
        basis_change_op(VecConvention::col(), VecConvention::in_basis(chi.basis()), chi.dx(),
                        chi.dy());
    return ChoiMatrix(adjoint(t) * chi.mat() * t, ChoiConvention::col_lambda, chi.dx(),
                      chi.dy());
}

}  // namespace

double tp_defect(const KrausRep& k) {
    CMatrix acc(k.dx(), k.dx());
    for (const auto& op : k.ops()) acc += adjoint(op) * op;
    return (acc - CMatrix::identity(k.dx())).frobenius_norm();
}

double tp_defect(const SuperOp& s) {
    const SuperOp sc = superop_in_col(s);
    // Trace preservation in components: sum_m S[(m,m),(n,v)] = delta_{nv}.
    double acc = 0.0;
    for (std::size_t n = 0; n < sc.dx(); ++n) {
        for (std::size_t v = 0; v < sc.dx(); ++v) {
            complexd sum(0.0);
            for (std::size_t m = 0; m < sc.dy(); ++m) {
                sum += sc.mat()(m * sc.dy() + m, n * sc.dx() + v);
            }
            const double want = (n == v) ? 1.0 : 0.0;
            acc += std::norm(sum - want);
        }
    }
    return std::sqrt(acc);
}

double tp_defect(const ChoiMatrix& lam) {
    const ChoiMatrix col = lam.to_col();
    const CMatrix tr_y = partial_trace_y(col.mat(), BipartiteShape(col.dx(), col.dy()));
    return (tr_y - CMatrix::identity(col.dx())).frobenius_norm();
}

double tp_defect(const ChiMatrix& chi) { return tp_defect(choi_of_chi(chi)); }

double tp_defect(const StinespringRep& se) {
    return (adjoint(se.a()) * se.a() - CMatrix::identity(se.dx())).frobenius_norm();
}

double hp_defect(const SuperOp& s) {
    const SuperOp sc = superop_in_col(s);
    const CMatrix swapped =
        detail::swap_factors(sc.mat(), sc.dy(), sc.dy(), sc.dx(), sc.dx());
    return (conjugate(sc.mat()) - swapped).frobenius_norm();
}

double hp_defect(const ChoiMatrix& lam) { return hermiticity_defect(lam.mat()); }

double hp_defect(const ChiMatrix& chi) { return hermiticity_defect(chi.mat()); }

double cp_min_eigenvalue(const SuperOp& s) {
    const SuperOp sc = superop_in_col(s);
    // No direct structural criterion exists on S; reshuffle to the Choi matrix.
    const CMatrix lam = reshuffle_row(sc.mat(), BipartiteShape(sc.dx(), sc.dy()));
    return min_eigenvalue_of_hermitian_part(lam);
}

double cp_min_eigenvalue(const ChoiMatrix& lam) {
    return min_eigenvalue_of_hermitian_part(lam.to_col().mat());
}

double cp_min_eigenvalue(const ChiMatrix& chi) {
    // Unitary basis changes preserve the spectrum; test chi directly.
    return min_eigenvalue_of_hermitian_part(chi.mat());
}

bool is_tp(const KrausRep& k, double tol) {
    return tp_defect(k) <= scaled_tol(tol, std::sqrt(static_cast<double>(k.dx())));
}
bool is_tp(const SuperOp& s, double tol) {
    return tp_defect(s) <= scaled_tol(tol, s.mat().frobenius_norm());
}
bool is_tp(const ChoiMatrix& lam, double tol) {
    return tp_defect(lam) <= scaled_tol(tol, lam.mat().frobenius_norm());
}
bool is_tp(const ChiMatrix& chi, double tol) {
    return tp_defect(chi) <= scaled_tol(tol, chi.mat().frobenius_norm());
}
bool is_tp(const StinespringRep& se, double tol) {
    return tp_defect(se) <= scaled_tol(tol, std::sqrt(static_cast<double>(se.dx())));
}

bool is_hp(const KrausRep&, double) { return true; }
bool is_hp(const SuperOp& s, double tol) {
    return hp_defect(s) <= scaled_tol(tol, s.mat().frobenius_norm());
}
bool is_hp(const ChoiMatrix& lam, double tol) {
    return hp_defect(lam) <= scaled_tol(tol, lam.mat().frobenius_norm());
}
bool is_hp(const ChiMatrix& chi, double tol) {
    return hp_defect(chi) <= scaled_tol(tol, chi.mat().frobenius_norm());
}
bool is_hp(const StinespringRep&, double) { return true; }

bool is_cp(const KrausRep&, double) { return true; }
bool is_cp(const SuperOp& s, double tol) {
    if (!is_hp(s, tol)) return false;
    return cp_min_eigenvalue(s) >= -tol * s.mat().frobenius_norm();
}
bool is_cp(const ChoiMatrix& lam, double tol) {
    if (!is_hp(lam, tol)) return false;
    return cp_min_eigenvalue(lam) >= -tol * lam.mat().frobenius_norm();
}
bool is_cp(const ChiMatrix& chi, double tol) {
    if (!is_hp(chi, tol)) return false;
    return cp_min_eigenvalue(chi) >= -tol * chi.mat().frobenius_norm();
}
bool is_cp(const StinespringRep&, double) { return true; }

}  // namespace channelforge
