#include "channelforge/random.hpp"

#include <cmath>

#include "channelforge/errors.hpp"

namespace channelforge {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
}

CMatrix Rng::gaussian_matrix(std::size_t rows, std::size_t cols) {
    CMatrix g(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double re = gaussian();
            const double im = gaussian();
            g(r, c) = complexd(re, im);
        }
    }
    return g;
}

CMatrix orthonormalize_columns(const CMatrix& g) {
    if (g.rows() < g.cols()) {
        throw ShapeError("orthonormalize_columns: more columns than rows");
    }
    CMatrix q = g;
    for (std::size_t c = 0; c < q.cols(); ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            complexd proj(0.0);
            for (std::size_t r = 0; r < q.rows(); ++r) {
                proj += std::conj(q(r, prev)) * q(r, c);
            }
            for (std::size_t r = 0; r < q.rows(); ++r) {
                q(r, c) -= proj * q(r, prev);
            }
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < q.rows(); ++r) nrm += std::norm(q(r, c));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            throw NumericError("orthonormalize_columns: rank-deficient input");
        }
        for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) /= nrm;
    }
    return q;
}

CMatrix random_unitary(std::size_t dim, Rng& rng) {
    if (dim == 0) {
        throw DomainError("random_unitary: dimension must be positive");
    }
    return orthonormalize_columns(rng.gaussian_matrix(dim, dim));
}

StinespringRep random_cptp(std::size_t dx, std::size_t dy, std::size_t kraus_rank, Rng& rng) {
    if (dx == 0 || dy == 0) {
        throw DomainError("random_cptp: dimensions must be positive");
    }
    if (kraus_rank == 0 || kraus_rank > dx * dy) {
        throw DomainError("random_cptp: kraus rank must be in [1, dx*dy]");
    }
    if (dy * kraus_rank < dx) {
        throw DomainError("random_cptp: dy*kraus_rank < dx, no isometry of that size exists");
    }
    const CMatrix a = orthonormalize_columns(rng.gaussian_matrix(dy * kraus_rank, dx));
    return StinespringRep(a, dx, dy, kraus_rank);
}

DensityMatrix random_state(std::size_t dim, Rng& rng) {
    if (dim == 0) {
        throw DomainError("random_state: dimension must be positive");
    }
    const CMatrix g = rng.gaussian_matrix(dim, dim);
    CMatrix rho = g * adjoint(g);
    rho *= complexd(1.0) / trace(rho);
    return DensityMatrix(std::move(rho));
}

}  // namespace channelforge
