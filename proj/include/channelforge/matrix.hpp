#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace channelforge {

using complexd = std::complex<double>;
using CVector = std::vector<complexd>;

/// Default relative tolerance. Verifiers scale it by the Frobenius norm of
/// their input unless documented otherwise.
inline constexpr double kDefaultTol = 1e-10;

/// Dense complex matrix, row-major storage.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<complexd> entries);
    CMatrix(std::initializer_list<std::initializer_list<complexd>> rows);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }
    bool is_square() const { return rows_ == cols_; }

    complexd& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const complexd& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::vector<complexd>& entries() { return entries_; }
    const std::vector<complexd>& entries() const { return entries_; }

    CVector row(std::size_t r) const;
    CVector col(std::size_t c) const;

    double frobenius_norm() const;
    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(complexd s);

    bool operator==(const CMatrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complexd> entries_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(complexd s, CMatrix a);
CMatrix operator*(CMatrix a, complexd s);
CVector operator*(const CMatrix& a, const CVector& v);

/// Standard matrix product; throws ShapeError on inner-dimension mismatch.
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

/// Kronecker product with block layout a_ij * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Sum of diagonal entries; throws ShapeError for non-square input.
complexd trace(const CMatrix& a);

CMatrix transpose(const CMatrix& m);
CMatrix conjugate(const CMatrix& m);
CMatrix adjoint(const CMatrix& m);

/// Outer product u v^dagger.
CMatrix outer(const CVector& u, const CVector& v);

/// Inner product u^dagger v (conjugate-linear in the first argument).
complexd inner(const CVector& u, const CVector& v);

double vec_norm(const CVector& v);

/// Largest entrywise absolute difference; matrices must share shape.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

}  // namespace channelforge
