#pragma once

#include "channelforge/matrix.hpp"

namespace channelforge {

/// Factorization of a bipartite space X (x) Y into its tensor factors.
struct BipartiteShape {
    std::size_t dx;
    std::size_t dy;

    BipartiteShape(std::size_t dx_, std::size_t dy_);

    std::size_t total() const { return dx * dy; }
};

/// Unnormalized maximally entangled state: sum_i |i> (x) |i>, length d^2.
CVector bell_state(std::size_t d);

/// SWAP : X (x) Y -> Y (x) X as an explicit (dy*dx) x (dx*dy) permutation
/// matrix, built from the basis sum over |y_j><x_i| (x) |x_i><y_j|.
CMatrix swap_matrix(std::size_t dx, std::size_t dy);

/// Tr_X : entries out[u,v] = sum_m in[(m,u),(m,v)], output dy x dy.
CMatrix partial_trace_x(const CMatrix& m, const BipartiteShape& shape);

/// Tr_Y : entries out[m,n] = sum_u in[(m,u),(n,u)], output dx x dx.
CMatrix partial_trace_y(const CMatrix& m, const BipartiteShape& shape);

/// Exchange the two factors on both sides: out[(u,m),(v,n)] = in[(m,u),(n,v)].
/// Equals SWAP * m * SWAP; the output is bipartite over (dy, dx).
CMatrix bipartite_swap(const CMatrix& m, const BipartiteShape& shape);

/// Col-reshuffle. On a square D x D input (D = dx*dy) the index map is
///   out[(m,n),(u,v)] = in[(m,u),(n,v)]   (m,n in X; u,v in Y)
/// producing a dx^2 x dy^2 matrix. A dx^2 x dy^2 input is mapped back by the
/// same rule, so the operation is an involution for every shape.
CMatrix reshuffle_col(const CMatrix& m, const BipartiteShape& shape);

/// Row-reshuffle. On a square D x D input the index map is
///   out[(v,u),(n,m)] = in[(m,u),(n,v)]
/// producing a dy^2 x dx^2 matrix; a dy^2 x dx^2 input is mapped back by the
/// same rule. Involution for every shape.
CMatrix reshuffle_row(const CMatrix& m, const BipartiteShape& shape);

namespace detail {

/// Swap row factors (r1, r2) and column factors (c1, c2) of a matrix whose
/// rows factor as r1*r2 and columns as c1*c2. Used for rectangular
/// superoperators, where the row and column splits differ.
CMatrix swap_factors(const CMatrix& m, std::size_t r1, std::size_t r2, std::size_t c1,
                     std::size_t c2);

}  // namespace detail

}  // namespace channelforge
