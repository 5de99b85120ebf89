#include "channelforge/vectorize.hpp"

#include <cmath>
#include <utility>

#include "channelforge/errors.hpp"

namespace channelforge {

namespace {

complexd hs_inner(const CMatrix& a, const CMatrix& b) {
    // Tr[a^dagger b] without forming the product.
    complexd acc(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a.entries()[i]) * b.entries()[i];
    }
    return acc;
}

}  // namespace

OperatorBasis::OperatorBasis(std::vector<CMatrix> elements, std::string label, unchecked_t)
    : elements_(std::move(elements)), label_(std::move(label)) {
    dy_ = elements_.front().rows();
    dx_ = elements_.front().cols();
}

OperatorBasis::OperatorBasis(std::vector<CMatrix> elements, double tol)
    : elements_(std::move(elements)), label_("custom") {
    if (elements_.empty()) {
        throw DomainError("OperatorBasis: no elements");
    }
    dy_ = elements_.front().rows();
    dx_ = elements_.front().cols();
    if (dx_ == 0 || dy_ == 0) {
        throw DomainError("OperatorBasis: elements must be non-empty matrices");
    }
    if (elements_.size() != dx_ * dy_) {
        throw DomainError("OperatorBasis: need dx*dy = " + std::to_string(dx_ * dy_) +
                          " elements, got " + std::to_string(elements_.size()));
    }
    for (const auto& e : elements_) {
        if (e.rows() != dy_ || e.cols() != dx_) {
            throw DomainError("OperatorBasis: elements have inconsistent shapes");
        }
    }
    for (std::size_t a = 0; a < elements_.size(); ++a) {
        for (std::size_t b = a; b < elements_.size(); ++b) {
            const complexd g = hs_inner(elements_[a], elements_[b]);
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(g - want) > tol * std::max(1.0, std::abs(g))) {
                throw DomainError("OperatorBasis: elements are not orthonormal (pair " +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
    }
}

OperatorBasis OperatorBasis::elementary(std::size_t dx, std::size_t dy,
                                        ElementaryOrdering ordering) {
    if (dx == 0 || dy == 0) {
        throw DomainError("elementary basis: dimensions must be positive");
    }
    std::vector<CMatrix> elems(dx * dy, CMatrix(dy, dx));
    for (std::size_t i = 0; i < dy; ++i) {
        for (std::size_t j = 0; j < dx; ++j) {
            const std::size_t alpha =
                ordering == ElementaryOrdering::col ? i + dy * j : dx * i + j;
            elems[alpha](i, j) = 1.0;
        }
    }
    return OperatorBasis(std::move(elems), "elementary", unchecked_t{});
}

OperatorBasis OperatorBasis::pauli(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw DomainError("pauli basis: need at least one qubit");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const complexd i_unit(0.0, 1.0);
    const std::vector<CMatrix> single = {
        CMatrix{{inv_sqrt2, 0.0}, {0.0, inv_sqrt2}},
        CMatrix{{0.0, inv_sqrt2}, {inv_sqrt2, 0.0}},
        CMatrix{{0.0, -i_unit * inv_sqrt2}, {i_unit * inv_sqrt2, 0.0}},
        CMatrix{{inv_sqrt2, 0.0}, {0.0, -inv_sqrt2}},
    };
    std::vector<CMatrix> elems = single;
    for (std::size_t q = 1; q < n_qubits; ++q) {
        std::vector<CMatrix> next;
        next.reserve(elems.size() * 4);
        for (const auto& left : elems) {
            for (const auto& right : single) {
                next.push_back(kron(left, right));
            }
        }
        elems = std::move(next);
    }
    return OperatorBasis(std::move(elems), "pauli", unchecked_t{});
}

bool OperatorBasis::operator==(const OperatorBasis& rhs) const {
    return label_ == rhs.label_ && dx_ == rhs.dx_ && dy_ == rhs.dy_ &&
           elements_ == rhs.elements_;
}

VecConvention VecConvention::in_basis(OperatorBasis basis) {
    VecConvention c(Kind::basis);
    c.basis_.push_back(std::move(basis));
    return c;
}

const OperatorBasis& VecConvention::basis() const {
    if (basis_.empty()) {
        throw DomainError("VecConvention: no operator basis attached");
    }
    return basis_.front();
}

OperatorBasis VecConvention::to_basis(std::size_t dx, std::size_t dy) const {
    switch (kind_) {
        case Kind::col:
            return OperatorBasis::elementary(dx, dy, ElementaryOrdering::col);
        case Kind::row:
            return OperatorBasis::elementary(dx, dy, ElementaryOrdering::row);
        case Kind::basis:
            break;
    }
    const OperatorBasis& b = basis();
    if (b.dx() != dx || b.dy() != dy) {
        throw ShapeError("VecConvention: basis is for L(" + std::to_string(b.dx()) + "," +
                         std::to_string(b.dy()) + "), requested (" + std::to_string(dx) + "," +
                         std::to_string(dy) + ")");
    }
    return b;
}

bool VecConvention::operator==(const VecConvention& rhs) const {
    if (kind_ != rhs.kind_) return false;
    if (kind_ != Kind::basis) return true;
    return basis() == rhs.basis();
}

CVector vec(const CMatrix& a, const VecConvention& conv) {
    const std::size_t dy = a.rows();
    const std::size_t dx = a.cols();
    switch (conv.kind()) {
        case VecConvention::Kind::col: {
            CVector v(dx * dy);
            for (std::size_t j = 0; j < dx; ++j) {
                for (std::size_t i = 0; i < dy; ++i) v[j * dy + i] = a(i, j);
            }
            return v;
        }
        case VecConvention::Kind::row: {
            CVector v(dx * dy);
            for (std::size_t i = 0; i < dy; ++i) {
                for (std::size_t j = 0; j < dx; ++j) v[i * dx + j] = a(i, j);
            }
            return v;
        }
        case VecConvention::Kind::basis:
            break;
    }
    const OperatorBasis& basis = conv.basis();
    if (basis.dx() != dx || basis.dy() != dy) {
        throw ShapeError("vec: operator is " + std::to_string(dy) + "x" + std::to_string(dx) +
                         " but basis elements are " + std::to_string(basis.dy()) + "x" +
                         std::to_string(basis.dx()));
    }
    CVector v(basis.size());
    for (std::size_t alpha = 0; alpha < basis.size(); ++alpha) {
        v[alpha] = hs_inner(basis.element(alpha), a);
    }
    return v;
}

CMatrix devec(const CVector& v, const VecConvention& conv, std::size_t dx, std::size_t dy) {
    if (v.size() != dx * dy) {
        throw ShapeError("devec: vector length " + std::to_string(v.size()) +
                         " does not equal dx*dy = " + std::to_string(dx * dy));
    }
    switch (conv.kind()) {
        case VecConvention::Kind::col: {
            CMatrix a(dy, dx);
            for (std::size_t j = 0; j < dx; ++j) {
                for (std::size_t i = 0; i < dy; ++i) a(i, j) = v[j * dy + i];
            }
            return a;
        }
        case VecConvention::Kind::row: {
            CMatrix a(dy, dx);
            for (std::size_t i = 0; i < dy; ++i) {
                for (std::size_t j = 0; j < dx; ++j) a(i, j) = v[i * dx + j];
            }
            return a;
        }
        case VecConvention::Kind::basis:
            break;
    }
    const OperatorBasis basis = conv.to_basis(dx, dy);
    CMatrix a(dy, dx);
    for (std::size_t alpha = 0; alpha < basis.size(); ++alpha) {
        if (v[alpha] == complexd(0.0)) continue;
        a += v[alpha] * basis.element(alpha);
    }
    return a;
}

CMatrix basis_change_op(const VecConvention& from, const VecConvention& to, std::size_t dx,
                        std::size_t dy) {
    const OperatorBasis sigma = from.to_basis(dx, dy);
    const OperatorBasis omega = to.to_basis(dx, dy);
    const std::size_t d = dx * dy;
    CMatrix t(d, d);
    for (std::size_t beta = 0; beta < d; ++beta) {
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            t(beta, alpha) = hs_inner(omega.element(beta), sigma.element(alpha));
        }
    }
    return t;
}

CVector roth_vec(const CMatrix& a, const CMatrix& b, const CMatrix& c, double tol) {
    const CMatrix abc = a * b * c;
    const CVector direct = vec(abc, VecConvention::col());
    const CVector lifted = kron(transpose(c), a) * vec(b, VecConvention::col());
    const double scale = std::max(1.0, vec_norm(direct));
    if (max_abs_diff(direct, lifted) > tol * scale) {
        throw NumericError("roth_vec: the two evaluation routes disagree");
    }
    return direct;
}

}  // namespace channelforge
