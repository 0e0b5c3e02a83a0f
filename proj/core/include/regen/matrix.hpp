#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "regen/gf256.hpp"

namespace regen::gf {

// Dense row-major matrix over GF(256). Payload blocks are matrices too:
// bytes are field elements, so coding is plain matrix multiplication.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    std::uint8_t& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

    std::span<std::uint8_t> row(std::size_t r) { return {d_.data() + r * cols_, cols_}; }
    std::span<const std::uint8_t> row(std::size_t r) const { return {d_.data() + r * cols_, cols_}; }

    std::span<const std::uint8_t> data() const { return d_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b);

    // Rows of `below` appended under this matrix; column counts must match.
    Matrix vstack(const Matrix& below) const;

    // Row rank by Gaussian elimination. Pivot rule: first row with a
    // nonzero entry in column order, so decodes are reproducible.
    std::size_t rank() const;

    // Solve this * x = rhs for x. `this` must be square or overdetermined
    // with full column rank; throws SingularSystem otherwise (including
    // inconsistent overdetermined systems).
    Matrix solve(const Matrix& rhs) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> d_;
};

// dst += factor * src, elementwise over GF(256).
void add_scaled_row(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                    std::uint8_t factor);

}  // namespace regen::gf
