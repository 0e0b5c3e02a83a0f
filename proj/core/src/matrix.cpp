#include "regen/matrix.hpp"

#include "regen/errors.hpp"

namespace regen::gf {

void add_scaled_row(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                    std::uint8_t factor) {
    if (factor == 0) return;
    if (factor == 1) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
        return;
    }
    const auto& t = detail::kTables;
    const int lf = t.log[factor];
    for (std::size_t i = 0; i < dst.size(); ++i) {
        std::uint8_t s = src[i];
        if (s) dst[i] ^= t.exp[lf + t.log[s]];
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        auto dst = out.row(i);
        for (std::size_t j = 0; j < a.cols_; ++j) {
            std::uint8_t f = a.at(i, j);
            if (f) add_scaled_row(dst, b.row(j), f);
        }
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (empty()) return below;
    if (below.empty()) return *this;
    if (cols_ != below.cols_) throw InvalidInput("vstack column mismatch");
    Matrix out(rows_ + below.rows_, cols_);
    std::copy(d_.begin(), d_.end(), out.d_.begin());
    std::copy(below.d_.begin(), below.d_.end(), out.d_.begin() + d_.size());
    return out;
}

std::size_t Matrix::rank() const {
    Matrix w(*this);
    std::size_t pivotRow = 0;
    for (std::size_t col = 0; col < w.cols_ && pivotRow < w.rows_; ++col) {
        std::size_t sel = pivotRow;
        while (sel < w.rows_ && w.at(sel, col) == 0) ++sel;
        if (sel == w.rows_) continue;
        if (sel != pivotRow)
            for (std::size_t c = 0; c < w.cols_; ++c) std::swap(w.at(sel, c), w.at(pivotRow, c));
        std::uint8_t invp = inv(w.at(pivotRow, col));
        for (std::size_t r = pivotRow + 1; r < w.rows_; ++r) {
            std::uint8_t f = mul(w.at(r, col), invp);
            if (f) add_scaled_row(w.row(r), w.row(pivotRow), f);
        }
        ++pivotRow;
    }
    return pivotRow;
}

Matrix Matrix::solve(const Matrix& rhs) const {
    if (rows_ < cols_) throw SingularSystem("underdetermined system");
    if (rhs.rows_ != rows_) throw InvalidInput("solve rhs row mismatch");

    Matrix a(*this);
    Matrix b(rhs);
    std::vector<std::size_t> pivotOfCol(cols_);

    std::size_t pivotRow = 0;
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t sel = pivotRow;
        while (sel < rows_ && a.at(sel, col) == 0) ++sel;
        if (sel == rows_) throw SingularSystem("rank-deficient system");
        if (sel != pivotRow) {
            for (std::size_t c = 0; c < cols_; ++c) std::swap(a.at(sel, c), a.at(pivotRow, c));
            for (std::size_t c = 0; c < b.cols_; ++c) std::swap(b.at(sel, c), b.at(pivotRow, c));
        }
        std::uint8_t invp = inv(a.at(pivotRow, col));
        if (invp != 1) {
            for (std::size_t c = col; c < cols_; ++c) a.at(pivotRow, c) = mul(a.at(pivotRow, c), invp);
            for (std::size_t c = 0; c < b.cols_; ++c) b.at(pivotRow, c) = mul(b.at(pivotRow, c), invp);
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pivotRow) continue;
            std::uint8_t f = a.at(r, col);
            if (f) {
                add_scaled_row(a.row(r), a.row(pivotRow), f);
                add_scaled_row(b.row(r), b.row(pivotRow), f);
            }
        }
        pivotOfCol[col] = pivotRow;
        ++pivotRow;
    }

    // Leftover rows must have reduced to zero on both sides.
    for (std::size_t r = pivotRow; r < rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c)
            if (b.at(r, c) != 0) throw SingularSystem("inconsistent overdetermined system");

    Matrix x(cols_, b.cols_);
    for (std::size_t col = 0; col < cols_; ++col)
        for (std::size_t c = 0; c < b.cols_; ++c) x.at(col, c) = b.at(pivotOfCol[col], c);
    return x;
}

}  // namespace regen::gf
