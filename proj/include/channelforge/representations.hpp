#pragma once

#include <optional>
#include <vector>

#include "channelforge/matrix.hpp"
#include "channelforge/tensor.hpp"
#include "channelforge/vectorize.hpp"

namespace channelforge {

/// Hermitian positive semidefinite unit-trace operator. Validation can be
/// skipped so the evolution maps stay usable on arbitrary operators
/// (they are linear; intermediate objects like |i><j| are not states).
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix mat, bool validate = true, double tol = kDefaultTol);

    std::size_t dim() const { return mat_.rows(); }
    const CMatrix& mat() const { return mat_; }

private:
    CMatrix mat_;
};

/// Kraus / operator-sum representation: a nonempty list of dy x dx operators.
class KrausRep {
public:
    explicit KrausRep(std::vector<CMatrix> ops);

    std::size_t dx() const { return dx_; }
    std::size_t dy() const { return dy_; }
    std::size_t count() const { return ops_.size(); }
    const std::vector<CMatrix>& ops() const { return ops_; }
    const CMatrix& op(std::size_t alpha) const { return ops_[alpha]; }

private:
    std::vector<CMatrix> ops_;
    std::size_t dx_ = 0;
    std::size_t dy_ = 0;
};

/// Liouville superoperator: dy^2 x dx^2 matrix acting on vectorized states.
/// A basis-kind convention is only meaningful for square channels, where the
/// same operator basis serves the input and output space.
class SuperOp {
public:
    SuperOp(CMatrix mat, VecConvention conv, std::size_t dx, std::size_t dy);

    std::size_t dx() const { return dx_; }
    std::size_t dy() const { return dy_; }
    const CMatrix& mat() const { return mat_; }
    const VecConvention& conv() const { return conv_; }

private:
    CMatrix mat_;
    VecConvention conv_;
    std::size_t dx_;
    std::size_t dy_;
};

enum class ChoiConvention { col_lambda, row_lambda };

/// Choi matrix: (dx*dy) x (dx*dy) operator on X (x) Y in the col convention
/// (Y (x) X for row, which is reached by the bipartite swap).
class ChoiMatrix {
public:
    ChoiMatrix(CMatrix mat, ChoiConvention conv, std::size_t dx, std::size_t dy);

    std::size_t dx() const { return dx_; }
    std::size_t dy() const { return dy_; }
    const CMatrix& mat() const { return mat_; }
    ChoiConvention convention() const { return conv_; }

    /// The same channel in the col-Lambda convention.
    ChoiMatrix to_col() const;

private:
    CMatrix mat_;
    ChoiConvention conv_;
    std::size_t dx_;
    std::size_t dy_;
};

/// Process matrix: the Choi matrix expressed in an orthonormal operator
/// basis; meaningless without the basis, which therefore travels with it.
class ChiMatrix {
public:
    ChiMatrix(CMatrix mat, OperatorBasis basis);

    std::size_t dx() const { return basis_.dx(); }
    std::size_t dy() const { return basis_.dy(); }
    const CMatrix& mat() const { return mat_; }
    const OperatorBasis& basis() const { return basis_; }

private:
    CMatrix mat_;
    OperatorBasis basis_;
};

/// Stinespring / system-environment representation. The core datum is the
/// (dy*denv) x dx operator A with the environment as the second output
/// factor; E(rho) = Tr_Z[A rho A^dagger]. When built from (or for) the
/// system-environment picture it also carries the initial environment state
/// and the joint unitary restricted to that state's subspace.
class StinespringRep {
public:
    StinespringRep(CMatrix a, std::size_t dx, std::size_t dy, std::size_t denv,
                   std::optional<CVector> env_state = std::nullopt,
                   std::optional<CMatrix> restricted_unitary = std::nullopt,
                   double tol = kDefaultTol);

    /// Build from a joint unitary on X (x) Z and an initial environment
    /// state: A = U (1_X (x) |v0>).
    static StinespringRep from_unitary(const CMatrix& u, const CVector& v0,
                                       double tol = kDefaultTol);

    std::size_t dx() const { return dx_; }
    std::size_t dy() const { return dy_; }
    std::size_t denv() const { return denv_; }
    const CMatrix& a() const { return a_; }
    const std::optional<CVector>& env_state() const { return env_state_; }
    const std::optional<CMatrix>& restricted_unitary() const { return restricted_unitary_; }

    /// Kraus operator <alpha|A against the computational environment basis.
    CMatrix kraus_block(std::size_t alpha) const;

private:
    CMatrix a_;
    std::size_t dx_;
    std::size_t dy_;
    std::size_t denv_;
    std::optional<CVector> env_state_;
    std::optional<CMatrix> restricted_unitary_;
};

// --- State evolution -------------------------------------------------------

DensityMatrix apply_kraus(const KrausRep& k, const DensityMatrix& rho);
DensityMatrix apply_superop(const SuperOp& s, const DensityMatrix& rho);
DensityMatrix apply_choi(const ChoiMatrix& lam, const DensityMatrix& rho);
DensityMatrix apply_chi(const ChiMatrix& chi, const DensityMatrix& rho);
DensityMatrix apply_sysenv(const StinespringRep& se, const DensityMatrix& rho);

// --- Structural predicates ---------------------------------------------------
//
// Each predicate comes with a witness function so callers can report the
// measured defect: tp_defect is the Frobenius distance from the
// trace-preservation identity, hp_defect the distance from the hermiticity
// condition, and cp_min_eigenvalue the smallest Choi eigenvalue. Predicates
// compare the witness against tol scaled by the natural size of the object.

double tp_defect(const KrausRep& k);
double tp_defect(const SuperOp& s);
double tp_defect(const ChoiMatrix& lam);
double tp_defect(const ChiMatrix& chi);
double tp_defect(const StinespringRep& se);

double hp_defect(const SuperOp& s);
double hp_defect(const ChoiMatrix& lam);
double hp_defect(const ChiMatrix& chi);

double cp_min_eigenvalue(const SuperOp& s);
double cp_min_eigenvalue(const ChoiMatrix& lam);
double cp_min_eigenvalue(const ChiMatrix& chi);

bool is_tp(const KrausRep& k, double tol = kDefaultTol);
bool is_tp(const SuperOp& s, double tol = kDefaultTol);
bool is_tp(const ChoiMatrix& lam, double tol = kDefaultTol);
bool is_tp(const ChiMatrix& chi, double tol = kDefaultTol);
bool is_tp(const StinespringRep& se, double tol = kDefaultTol);

bool is_hp(const KrausRep&, double = kDefaultTol);  // Kraus form: always
bool is_hp(const SuperOp& s, double tol = kDefaultTol);
bool is_hp(const ChoiMatrix& lam, double tol = kDefaultTol);
bool is_hp(const ChiMatrix& chi, double tol = kDefaultTol);
bool is_hp(const StinespringRep&, double = kDefaultTol);  // always

bool is_cp(const KrausRep&, double = kDefaultTol);  // Kraus form: always
bool is_cp(const SuperOp& s, double tol = kDefaultTol);
bool is_cp(const ChoiMatrix& lam, double tol = kDefaultTol);
bool is_cp(const ChiMatrix& chi, double tol = kDefaultTol);
bool is_cp(const StinespringRep&, double = kDefaultTol);  // always

}  // namespace channelforge
