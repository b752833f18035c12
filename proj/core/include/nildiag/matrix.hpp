#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nildiag/gf2m.hpp"

namespace nildiag {

using Vec = std::vector<Fe>;

/// Dense row-major matrix over GF(2^m). Matrices act on column vectors from
/// the left; e_i is the i-th standard column.
class Mat {
public:
    Mat(FieldSpec field, std::size_t rows, std::size_t cols);
    /// Row-major entries; entries.size() must be rows * cols.
    Mat(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Fe> entries);
    /// Square matrix from nested rows of raw bit patterns, for literals in
    /// tests and fixed constructions.
    Mat(FieldSpec field, std::initializer_list<std::initializer_list<std::uint32_t>> rows);

    static Mat zero(FieldSpec field, std::size_t n) { return Mat(field, n, n); }
    static Mat identity(FieldSpec field, std::size_t n);
    static Mat scalar(FieldSpec field, std::size_t n, Fe c);
    /// Matrix whose columns are `cols` (each of length n).
    static Mat from_columns(FieldSpec field, std::span<const Vec> cols);

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::size_t order() const;

    Fe operator()(std::size_t r, std::size_t c) const noexcept { return a_[r * cols_ + c]; }
    Fe& operator()(std::size_t r, std::size_t c) noexcept { return a_[r * cols_ + c]; }
    const std::vector<Fe>& entries() const noexcept { return a_; }

    Vec column(std::size_t c) const;
    bool is_zero() const noexcept;
    bool is_identity() const noexcept;

    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b) { return a + b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    Vec apply(const Vec& v) const;
    Mat scaled(Fe c) const;
    /// this + c * Id
    Mat shifted(Fe c) const;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Fe> a_;
};

Mat pow(const Mat& m, std::uint64_t e);
Fe trace(const Mat& m);
Mat direct_sum(const Mat& a, const Mat& b);
/// Places `block` into `target` with its top-left corner at (r, c).
void place_block(Mat& target, const Mat& block, std::size_t r, std::size_t c);

/// Gaussian elimination with first-nonzero pivoting. Throws
/// PreconditionError("singular").
Mat inverse(const Mat& m);
std::size_t rank(const Mat& m);
/// Basis of the right kernel {v : m v = 0}, one vector per free column.
std::vector<Vec> nullspace(const Mat& m);
/// Solves m x = b for square invertible m.
Vec solve(const Mat& m, const Vec& b);
/// P * M * P^{-1}
Mat conjugate(const Mat& p, const Mat& m);

/// Matrix text format:
///   field gf(2^m)[modulus=0xHH]
///   n <order>
///   <n rows of n hexadecimal entries separated by single spaces>
std::string format_matrix(const Mat& m);
Mat parse_matrix(std::string_view text);

}  // namespace nildiag
