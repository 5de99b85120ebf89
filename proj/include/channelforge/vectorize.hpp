#pragma once

#include <string>
#include <vector>

#include "channelforge/matrix.hpp"

namespace channelforge {

enum class ElementaryOrdering { col, row };

/// Ordered orthonormal operator basis for L(X,Y) under the Hilbert-Schmidt
/// inner product Tr[a^dagger b]. Elements are dy x dx; there are dx*dy of
/// them, and the ordering is part of the basis identity.
class OperatorBasis {
public:
    /// Custom basis; orthonormality is validated and failure is a hard error.
    explicit OperatorBasis(std::vector<CMatrix> elements, double tol = kDefaultTol);

    /// Elementary basis E_ij = |i><j|. Col ordering puts E_ij at
    /// alpha = i + dy*j (so coefficient extraction reproduces column
    /// stacking); row ordering uses alpha = dx*i + j.
    static OperatorBasis elementary(std::size_t dx, std::size_t dy,
                                    ElementaryOrdering ordering = ElementaryOrdering::col);

    /// n-fold Kronecker products of {I, X, Y, Z}/sqrt(2) in lexicographic
    /// order, first factor most significant.
    static OperatorBasis pauli(std::size_t n_qubits);

    std::size_t dx() const { return dx_; }
    std::size_t dy() const { return dy_; }
    std::size_t size() const { return elements_.size(); }
    const CMatrix& element(std::size_t alpha) const { return elements_[alpha]; }
    const std::vector<CMatrix>& elements() const { return elements_; }
    const std::string& label() const { return label_; }

    bool operator==(const OperatorBasis& rhs) const;

private:
    struct unchecked_t {};
    OperatorBasis(std::vector<CMatrix> elements, std::string label, unchecked_t);

    std::vector<CMatrix> elements_;
    std::string label_;
    std::size_t dx_ = 0;
    std::size_t dy_ = 0;
};

/// Vectorization convention: column stacking, row stacking, or coefficients
/// in an orthonormal operator basis. Col and row are equivalent to the
/// elementary basis in the corresponding ordering.
class VecConvention {
public:
    enum class Kind { col, row, basis };

    static VecConvention col() { return VecConvention(Kind::col); }
    static VecConvention row() { return VecConvention(Kind::row); }
    static VecConvention in_basis(OperatorBasis basis);

    Kind kind() const { return kind_; }
    bool is_col() const { return kind_ == Kind::col; }
    const OperatorBasis& basis() const;

    /// Materialize the equivalent OperatorBasis over L(X,Y).
    OperatorBasis to_basis(std::size_t dx, std::size_t dy) const;

    bool operator==(const VecConvention& rhs) const;

private:
    explicit VecConvention(Kind k) : kind_(k) {}

    Kind kind_;
    std::vector<OperatorBasis> basis_;  // empty unless kind == basis
};

/// Vectorize a dy x dx operator. Col stacks columns (component j*dy+i is
/// a_ij), row stacks rows (component i*dx+j), and a basis convention returns
/// the coefficient vector Tr[sigma_alpha^dagger a].
CVector vec(const CMatrix& a, const VecConvention& conv);

/// Inverse of vec for every convention: devec(vec(a)) == a.
CMatrix devec(const CVector& v, const VecConvention& conv, std::size_t dx, std::size_t dy);

/// Unitary T with T * vec(a, from) == vec(a, to) for all a in L(X,Y);
/// T[beta, alpha] = Tr[omega_beta^dagger sigma_alpha]. For from=col, to=row
/// this is exactly the SWAP permutation.
CMatrix basis_change_op(const VecConvention& from, const VecConvention& to, std::size_t dx,
                        std::size_t dy);

/// vec(a*b*c, col), cross-checked against (c^T (x) a) * vec(b, col); raises
/// NumericError if the two routes disagree beyond tolerance.
CVector roth_vec(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                 double tol = kDefaultTol);

inline OperatorBasis elementary_basis(std::size_t dx, std::size_t dy,
                                      ElementaryOrdering ordering = ElementaryOrdering::col) {
    return OperatorBasis::elementary(dx, dy, ordering);
}

inline OperatorBasis pauli_basis(std::size_t n_qubits) { return OperatorBasis::pauli(n_qubits); }

}  // namespace channelforge
