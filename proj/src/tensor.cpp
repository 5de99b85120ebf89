#include "channelforge/tensor.hpp"

#include <string>

#include "channelforge/errors.hpp"

namespace channelforge {

namespace {

void require_square_bipartite(const CMatrix& m, const BipartiteShape& shape, const char* op) {
    const std::size_t d = shape.total();
    if (m.rows() != d || m.cols() != d) {
        throw ShapeError(std::string(op) + ": expected " + std::to_string(d) + "x" +
                         std::to_string(d) + " matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
}

}  // namespace

BipartiteShape::BipartiteShape(std::size_t dx_, std::size_t dy_) : dx(dx_), dy(dy_) {
    if (dx == 0 || dy == 0) {
        throw DomainError("BipartiteShape: dimensions must be positive");
    }
}

CVector bell_state(std::size_t d) {
    if (d == 0) {
        throw DomainError("bell_state: dimension must be positive");
    }
    CVector v(d * d, complexd(0.0));
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;
    return v;
}

CMatrix swap_matrix(std::size_t dx, std::size_t dy) {
    if (dx == 0 || dy == 0) {
        throw DomainError("swap_matrix: dimensions must be positive");
    }
    CMatrix s(dy * dx, dx * dy);
    for (std::size_t i = 0; i < dx; ++i) {
        for (std::size_t j = 0; j < dy; ++j) {
            s(j * dx + i, i * dy + j) = 1.0;
        }
    }
    return s;
}

CMatrix partial_trace_x(const CMatrix& m, const BipartiteShape& shape) {
    require_square_bipartite(m, shape, "partial_trace_x");
    CMatrix out(shape.dy, shape.dy);
    for (std::size_t u = 0; u < shape.dy; ++u) {
        for (std::size_t v = 0; v < shape.dy; ++v) {
            complexd acc(0.0);
            for (std::size_t s = 0; s < shape.dx; ++s) {
                acc += m(s * shape.dy + u, s * shape.dy + v);
            }
            out(u, v) = acc;
        }
    }
    return out;
}

CMatrix partial_trace_y(const CMatrix& m, const BipartiteShape& shape) {
    require_square_bipartite(m, shape, "partial_trace_y");
    CMatrix out(shape.dx, shape.dx);
    for (std::size_t a = 0; a < shape.dx; ++a) {
        for (std::size_t b = 0; b < shape.dx; ++b) {
            complexd acc(0.0);
            for (std::size_t u = 0; u < shape.dy; ++u) {
                acc += m(a * shape.dy + u, b * shape.dy + u);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

namespace detail {

CMatrix swap_factors(const CMatrix& m, std::size_t r1, std::size_t r2, std::size_t c1,
                     std::size_t c2) {
    if (m.rows() != r1 * r2 || m.cols() != c1 * c2) {
        throw ShapeError("swap_factors: factorization does not match matrix shape");
    }
    CMatrix out(r2 * r1, c2 * c1);
    for (std::size_t a = 0; a < r1; ++a) {
        for (std::size_t b = 0; b < r2; ++b) {
            for (std::size_t c = 0; c < c1; ++c) {
                for (std::size_t d = 0; d < c2; ++d) {
                    out(b * r1 + a, d * c1 + c) = m(a * r2 + b, c * c2 + d);
                }
            }
        }
    }
    return out;
}

}  // namespace detail

CMatrix bipartite_swap(const CMatrix& m, const BipartiteShape& shape) {
    require_square_bipartite(m, shape, "bipartite_swap");
    return detail::swap_factors(m, shape.dx, shape.dy, shape.dx, shape.dy);
}

CMatrix reshuffle_col(const CMatrix& m, const BipartiteShape& shape) {
    const std::size_t dx = shape.dx;
    const std::size_t dy = shape.dy;
    const std::size_t d = shape.total();
    if (m.rows() == d && m.cols() == d) {
        CMatrix out(dx * dx, dy * dy);
        for (std::size_t a = 0; a < dx; ++a) {
            for (std::size_t n = 0; n < dx; ++n) {
                for (std::size_t u = 0; u < dy; ++u) {
                    for (std::size_t v = 0; v < dy; ++v) {
                        out(a * dx + n, u * dy + v) = m(a * dy + u, n * dy + v);
                    }
                }
            }
        }
        return out;
    }
    if (m.rows() == dx * dx && m.cols() == dy * dy) {
        CMatrix out(d, d);
        for (std::size_t a = 0; a < dx; ++a) {
            for (std::size_t n = 0; n < dx; ++n) {
                for (std::size_t u = 0; u < dy; ++u) {
                    for (std::size_t v = 0; v < dy; ++v) {
                        out(a * dy + u, n * dy + v) = m(a * dx + n, u * dy + v);
                    }
                }
            }
        }
        return out;
    }
    throw ShapeError("reshuffle_col: matrix is neither " + std::to_string(d) + "x" +
                     std::to_string(d) + " nor " + std::to_string(dx * dx) + "x" +
                     std::to_string(dy * dy));
}

CMatrix reshuffle_row(const CMatrix& m, const BipartiteShape& shape) {
    const std::size_t dx = shape.dx;
    const std::size_t dy = shape.dy;
    const std::size_t d = shape.total();
    if (m.rows() == d && m.cols() == d) {
        CMatrix out(dy * dy, dx * dx);
        for (std::size_t a = 0; a < dx; ++a) {
            for (std::size_t n = 0; n < dx; ++n) {
                for (std::size_t u = 0; u < dy; ++u) {
                    for (std::size_t v = 0; v < dy; ++v) {
                        out(v * dy + u, n * dx + a) = m(a * dy + u, n * dy + v);
                    }
                }
            }
        }
        return out;
    }
    if (m.rows() == dy * dy && m.cols() == dx * dx) {
        CMatrix out(d, d);
        for (std::size_t a = 0; a < dx; ++a) {
            for (std::size_t n = 0; n < dx; ++n) {
                for (std::size_t u = 0; u < dy; ++u) {
                    for (std::size_t v = 0; v < dy; ++v) {
                        out(a * dy + u, n * dy + v) = m(v * dy + u, n * dx + a);
                    }
                }
            }
        }
        return out;
    }
    throw ShapeError("reshuffle_row: matrix is neither " + std::to_string(d) + "x" +
                     std::to_string(d) + " nor " + std::to_string(dy * dy) + "x" +
                     std::to_string(dx * dx));
}

}  // namespace channelforge
