#pragma once

#include "germkit/rational.hpp"

#include <cstddef>
#include <vector>

namespace germkit {

/// Small dense matrix over Q, row-major.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rank() const;
    /// Throws PreconditionError when singular.
    RationalMatrix inverse() const;
    RationalMatrix transpose() const;

    friend RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b);
    bool operator==(const RationalMatrix &o) const = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

} // namespace germkit
