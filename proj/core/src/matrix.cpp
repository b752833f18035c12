#include "nildiag/matrix.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "nildiag/errors.hpp"
#include "nildiag/poly.hpp"

namespace nildiag {

Mat::Mat(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, kZero) {}

Mat::Mat(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Fe> entries)
    : field_(field), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw PreconditionError("matrix entry count does not match dimensions");
    for (Fe x : a_) {
        if (!field_.contains(x)) throw PreconditionError("matrix entry outside the field");
    }
}

Mat::Mat(FieldSpec field, std::initializer_list<std::initializer_list<std::uint32_t>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    for (const auto& row : rows) {
        if (row.size() != cols_) throw PreconditionError("ragged matrix literal");
        for (std::uint32_t bits : row) {
            if (!field_.contains(Fe{bits})) throw PreconditionError("matrix entry outside the field");
            a_.push_back(Fe{bits});
        }
    }
}

Mat Mat::identity(FieldSpec field, std::size_t n) { return scalar(field, n, kOne); }

Mat Mat::scalar(FieldSpec field, std::size_t n, Fe c) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

Mat Mat::from_columns(FieldSpec field, std::span<const Vec> cols) {
    const std::size_t n = cols.empty() ? 0 : cols.front().size();
    Mat m(field, n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != n) throw PreconditionError("column length mismatch");
        for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

std::size_t Mat::order() const {
    if (!is_square()) throw PreconditionError("matrix is not square");
    return rows_;
}

Vec Mat::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

bool Mat::is_zero() const noexcept {
    for (Fe x : a_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

bool Mat::is_identity() const noexcept {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((*this)(r, c) != (r == c ? kOne : kZero)) return false;
        }
    }
    return true;
}

Mat operator+(const Mat& a, const Mat& b) {
    require_same_field(a.field_, b.field_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("dimension mismatch");
    Mat out(a.field_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = Fe{a.a_[i].bits() ^ b.a_[i].bits()};
    return out;
}

Mat operator*(const Mat& a, const Mat& b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.rows_) throw PreconditionError("dimension mismatch");
    const FieldSpec& F = a.field_;
    Mat out(F, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Fe x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Fe y = b(k, j);
                if (!y.is_zero()) out(i, j) = F.add(out(i, j), F.mul(x, y));
            }
        }
    }
    return out;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != cols_) throw PreconditionError("dimension mismatch");
    Vec out(rows_, kZero);
    for (std::size_t r = 0; r < rows_; ++r) {
        Fe acc = kZero;
        for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul((*this)(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

Mat Mat::scaled(Fe c) const {
    Mat out = *this;
    for (Fe& x : out.a_) x = field_.mul(x, c);
    return out;
}

Mat Mat::shifted(Fe c) const {
    Mat out = *this;
    for (std::size_t i = 0; i < order(); ++i) out(i, i) = field_.add(out(i, i), c);
    return out;
}

Mat pow(const Mat& m, std::uint64_t e) {
    Mat result = Mat::identity(m.field(), m.order());
    Mat base = m;
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

Fe trace(const Mat& m) {
    Fe t = kZero;
    for (std::size_t i = 0; i < m.order(); ++i) t = m.field().add(t, m(i, i));
    return t;
}

void place_block(Mat& target, const Mat& block, std::size_t r, std::size_t c) {
    require_same_field(target.field(), block.field());
    if (r + block.rows() > target.rows() || c + block.cols() > target.cols()) {
        throw PreconditionError("block does not fit");
    }
    for (std::size_t i = 0; i < block.rows(); ++i) {
        for (std::size_t j = 0; j < block.cols(); ++j) target(r + i, c + j) = block(i, j);
    }
}

Mat direct_sum(const Mat& a, const Mat& b) {
    require_same_field(a.field(), b.field());
    Mat out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    place_block(out, a, 0, 0);
    place_block(out, b, a.rows(), a.cols());
    return out;
}

namespace {

struct Echelon {
    Mat reduced;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form. Pivot = first nonzero entry scanning rows in
// the current column.
Echelon rref(Mat m) {
    const FieldSpec& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        }
        const Fe inv = F.inv(m(row, col));
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = F.mul(m(row, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Fe f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = F.add(m(i, j), F.mul(f, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

}  // namespace

Mat inverse(const Mat& m) {
    const std::size_t n = m.order();
    Mat aug(m.field(), n, 2 * n);
    place_block(aug, m, 0, 0);
    place_block(aug, Mat::identity(m.field(), n), 0, n);
    Echelon e = rref(std::move(aug));
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) throw PreconditionError("singular");
    Mat inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    }
    return inv;
}

std::size_t rank(const Mat& m) { return rref(m).pivot_cols.size(); }

std::vector<Vec> nullspace(const Mat& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), kZero);
        v[free] = kOne;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = e.reduced(r, free);  // char 2: -x = x
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec solve(const Mat& m, const Vec& b) {
    const std::size_t n = m.order();
    if (b.size() != n) throw PreconditionError("dimension mismatch");
    Mat aug(m.field(), n, n + 1);
    place_block(aug, m, 0, 0);
    for (std::size_t i = 0; i < n; ++i) aug(i, n) = b[i];
    Echelon e = rref(std::move(aug));
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) throw PreconditionError("singular");
    return e.reduced.column(n);
}

Mat conjugate(const Mat& p, const Mat& m) { return p * m * inverse(p); }

std::string format_matrix(const Mat& m) {
    std::ostringstream out;
    out << "field " << m.field().designation() << "\n";
    out << "n " << m.order() << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << to_hex(m(r, c));
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

}  // namespace

Mat parse_matrix(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t li = 0;
    auto next_line = [&]() -> std::string_view {
        while (li < lines.size() && lines[li].find_first_not_of(" \t") == std::string_view::npos) ++li;
        if (li == lines.size()) throw ParseError("unexpected end of input", li + 1, 0);
        return lines[li++];
    };

    std::string_view header = next_line();
    if (header.rfind("field ", 0) != 0) throw ParseError("expected 'field <designation>'", li, 1);
    std::optional<FieldSpec> field;
    try {
        field = parse_field(header.substr(6));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), li, 7);
    }

    std::string_view size_line = next_line();
    std::size_t n = 0;
    if (size_line.rfind("n ", 0) != 0) throw ParseError("expected 'n <order>'", li, 1);
    {
        std::string_view num = size_line.substr(2);
        while (!num.empty() && num.front() == ' ') num.remove_prefix(1);
        while (!num.empty() && (num.back() == ' ' || num.back() == '\t')) num.remove_suffix(1);
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
        if (ec != std::errc{} || p != num.data() + num.size() || n == 0) throw ParseError("bad order", li, 3);
    }

    std::vector<Fe> entries;
    entries.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        std::string_view line = next_line();
        const std::size_t line_no = li;
        std::size_t pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (pos == line.size()) throw ParseError("row has too few entries", line_no, pos + 1);
            std::size_t start = pos;
            if (pos + 1 < line.size() && line[pos] == '0' && (line[pos + 1] == 'x' || line[pos + 1] == 'X')) pos += 2;
            std::uint32_t v = 0;
            auto [p, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v, 16);
            if (ec != std::errc{}) throw ParseError("bad hexadecimal entry", line_no, start + 1);
            pos = static_cast<std::size_t>(p - line.data());
            if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') {
                throw ParseError("bad hexadecimal entry", line_no, start + 1);
            }
            if (!field->contains(Fe{v})) throw ParseError("entry outside the field", line_no, start + 1);
            entries.push_back(Fe{v});
        }
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos != line.size()) throw ParseError("row has too many entries", line_no, pos + 1);
    }
    while (li < lines.size()) {
        if (lines[li].find_first_not_of(" \t") != std::string_view::npos) {
            throw ParseError("trailing content after matrix", li + 1, 1);
        }
        ++li;
    }
    return Mat(*field, n, n, std::move(entries));
}

}  // namespace nildiag
