#include "channelforge/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "channelforge/errors.hpp"

namespace channelforge {

CMatrix EigenDecomposition::reconstruct() const {
    const std::size_t n = eigenvectors.empty() ? 0 : eigenvectors.front().size();
    CMatrix out(n, n);
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        const CVector& v = eigenvectors[k];
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += eigenvalues[k] * v[r] * std::conj(v[c]);
            }
        }
    }
    return out;
}

namespace {

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) s += std::norm(a(r, c));
        }
    }
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q). The 2x2 unitary acting on columns
// (p,q) is [[c, -s*e^{i phi}], [s*e^{-i phi}, c]] with phi = arg a(p,q).
void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const complexd apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const complexd phase = apq / r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (app - aqq) / (2.0 * r);
    double t;
    if (tau >= 0.0) {
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    // Update a <- J^dagger a J on rows/columns p and q.
    for (std::size_t k = 0; k < n; ++k) {
        const complexd akp = a(k, p);
        const complexd akq = a(k, q);
        a(k, p) = c * akp + s * std::conj(phase) * akq;
        a(k, q) = c * akq - s * phase * akp;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const complexd apk = a(p, k);
        const complexd aqk = a(q, k);
        a(p, k) = c * apk + s * phase * aqk;
        a(q, k) = c * aqk - s * std::conj(phase) * apk;
    }
    // Clean up the pair exactly; the diagonal stays real.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = complexd(a(p, p).real(), 0.0);
    a(q, q) = complexd(a(q, q).real(), 0.0);

    for (std::size_t k = 0; k < n; ++k) {
        const complexd vkp = v(k, p);
        const complexd vkq = v(k, q);
        v(k, p) = c * vkp + s * std::conj(phase) * vkq;
        v(k, q) = c * vkq - s * phase * vkp;
    }
}

void fix_phase(CVector& v) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const complexd phase = std::conj(v[imax]) / best;
    for (auto& e : v) e *= phase;
}

}  // namespace

EigenDecomposition eig_hermitian(const CMatrix& h, double tol) {
    if (!h.is_square()) {
        throw ShapeError("eig_hermitian: matrix is not square");
    }
    const std::size_t n = h.rows();
    const double hnorm = h.frobenius_norm();
    double herm_defect = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            herm_defect += std::norm(h(r, c) - std::conj(h(c, r)));
        }
    }
    herm_defect = std::sqrt(herm_defect);
    if (herm_defect > tol * std::max(hnorm, 1.0)) {
        throw DomainError("eig_hermitian: matrix is not Hermitian within tolerance");
    }

    // Work on the Hermitian part so roundoff asymmetry cannot leak through.
    CMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
        }
    }
    CMatrix v = CMatrix::identity(n);

    const double target = 1e-14 * std::max(hnorm, 1e-300);
    constexpr int kMaxSweeps = 64;
    int sweep = 0;
    while (offdiag_norm(a) > target) {
        if (++sweep > kMaxSweeps) {
            throw NumericError("eig_hermitian: Jacobi sweeps did not converge");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                jacobi_rotate(a, v, p, q);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues.push_back(a(order[k], order[k]).real());
        CVector vec = v.col(order[k]);
        const double nrm = vec_norm(vec);
        for (auto& e : vec) e /= nrm;
        fix_phase(vec);
        out.eigenvectors.push_back(std::move(vec));
    }
    return out;
}

}  // namespace channelforge
