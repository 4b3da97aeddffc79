#include "germkit/rational_matrix.hpp"

#include "germkit/error.hpp"

#include <utility>

namespace germkit {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::size_t RationalMatrix::rank() const {
    RationalMatrix a = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows_ && a(pivot, c) == 0) ++pivot;
        if (pivot == rows_) continue;
        for (std::size_t k = 0; k < cols_; ++k) std::swap(a(rank, k), a(pivot, k));
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            if (a(r, c) == 0) continue;
            Rational f = a(r, c) / a(rank, c);
            for (std::size_t k = c; k < cols_; ++k) a(r, k) -= f * a(rank, k);
        }
        ++rank;
    }
    return rank;
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    RationalMatrix a = *this, inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a(pivot, c) == 0) ++pivot;
        if (pivot == n) throw PreconditionError("matrix is singular");
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(a(c, k), a(pivot, k));
            std::swap(inv(c, k), inv(pivot, k));
        }
        Rational d = a(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= d;
            inv(c, k) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(r, k) -= f * a(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix dimension mismatch");
    RationalMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

} // namespace germkit
