#include "arrdual/exact_matrix.hpp"

#include <algorithm>
#include <numeric>

namespace arrdual::exactla {

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : init) {
        if (static_cast<int>(r.size()) != cols_)
            throw DimensionError("ragged initializer for ExactMatrix");
        for (long long v : r) data_.emplace_back(v);
    }
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_strings(const std::vector<std::vector<std::string>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows.front().size()) : 0;
    ExactMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw DimensionError("ragged rows in matrix literal");
        for (int j = 0; j < c; ++j) m(i, j) = parse_rational(rows[i][j]);
    }
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ExactMatrix ExactMatrix::mul(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionError("matrix product shape mismatch");
    ExactMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

ExactMatrix ExactMatrix::select_columns(const std::vector<int>& cols) const {
    ExactMatrix out(rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] < 0 || cols[j] >= cols_) throw DimensionError("column index out of range");
            out(i, static_cast<int>(j)) = (*this)(i, cols[j]);
        }
    return out;
}

ExactMatrix ExactMatrix::select_rows(const std::vector<int>& rows) const {
    ExactMatrix out(static_cast<int>(rows.size()), cols_);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= rows_) throw DimensionError("row index out of range");
        for (int j = 0; j < cols_; ++j) out(static_cast<int>(i), j) = (*this)(rows[i], j);
    }
    return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& below) const {
    if (below.rows_ == 0) return *this;
    if (rows_ == 0) return below;
    if (cols_ != below.cols_) throw DimensionError("vstack column mismatch");
    ExactMatrix out(rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(rows_ + i, j) = below(i, j);
    return out;
}

std::vector<Rational> ExactMatrix::row(int i) const {
    std::vector<Rational> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

std::vector<Rational> ExactMatrix::col(int j) const {
    std::vector<Rational> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

std::vector<std::vector<std::string>> ExactMatrix::to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        out[i].reserve(cols_);
        for (int j = 0; j < cols_; ++j) out[i].push_back(to_string((*this)(i, j)));
    }
    return out;
}

namespace {

// Clears denominators row by row so Bareiss can run over integers. Rank is
// unaffected; det picks up the product of the scale factors, returned in
// `scale` so callers can divide it back out.
std::vector<std::vector<Int>> integerize(const ExactMatrix& m, Rational* scale) {
    std::vector<std::vector<Int>> a(m.rows(), std::vector<Int>(m.cols()));
    Rational s = 1;
    for (int i = 0; i < m.rows(); ++i) {
        Int lcm = 1;
        for (int j = 0; j < m.cols(); ++j) {
            const Int& d = denominator(m(i, j));
            lcm = lcm / gcd(lcm, d) * d;
        }
        s *= Rational(lcm);
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& v = m(i, j);
            a[i][j] = numerator(v) * (lcm / denominator(v));
        }
    }
    if (scale) *scale = s;
    return a;
}

// One-step Bareiss elimination. Returns the rank; when `det_out` is nonnull
// and the matrix is square, stores the integer determinant.
int bareiss(std::vector<std::vector<Int>> a, Int* det_out) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Int prev = 1;
    int sign_flips = 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r) { std::swap(a[pivot], a[r]); ++sign_flips; }
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    if (det_out) {
        if (r < rows)
            *det_out = 0;
        else
            *det_out = (sign_flips % 2 == 0) ? prev : Int(-prev);
    }
    return r;
}

}  // namespace

int rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(integerize(m, nullptr), nullptr);
}

Rational det(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
    if (m.rows() == 0) return 1;
    Rational scale;
    auto a = integerize(m, &scale);
    Int d;
    bareiss(std::move(a), &d);
    return Rational(d) / scale;
}

Rational minor(const ExactMatrix& m, const std::vector<int>& row_idx,
               const std::vector<int>& col_idx) {
    if (row_idx.size() != col_idx.size())
        throw DimensionError("minor index lists of unequal length");
    auto strictly_increasing = [](const std::vector<int>& v) {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i - 1] >= v[i]) return false;
        return true;
    };
    if (!strictly_increasing(row_idx) || !strictly_increasing(col_idx))
        throw DimensionError("minor index lists must be strictly increasing");
    return det(m.select_rows(row_idx).select_columns(col_idx));
}

ExactMatrix nullspace_basis(const ExactMatrix& m) {
    const int rows = m.rows();
    const int cols = m.cols();
    // Reduced row echelon form over the rationals.
    ExactMatrix a = m;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
        Rational inv = Rational(1) / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;

    ExactMatrix basis(cols - r, cols);
    int out = 0;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        basis(out, c) = 1;
        for (int p = 0; p < r; ++p) basis(out, pivot_col[p]) = -a(p, c);
        ++out;
    }
    return basis;
}

ExactMatrix complete_to_square(const ExactMatrix& b) {
    const int n = b.cols();
    if (rank(b) != b.rows()) throw RankError("completion requires full row rank");
    ExactMatrix result = b;
    int r = b.rows();
    for (int l = 0; l < n && r < n; ++l) {
        ExactMatrix unit(1, n);
        unit(0, l) = 1;
        ExactMatrix candidate = result.vstack(unit);
        if (rank(candidate) == r + 1) {
            result = std::move(candidate);
            ++r;
        }
    }
    if (r != n) throw RankError("completion failed to reach full rank");
    return result;
}

ExactMatrix inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
    const int n = m.rows();
    ExactMatrix a = m;
    ExactMatrix inv = ExactMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (a(i, c) != 0) { pivot = i; break; }
        if (pivot < 0) throw RankError("singular matrix has no inverse");
        if (pivot != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(c, j));
                std::swap(inv(pivot, j), inv(c, j));
            }
        Rational s = Rational(1) / a(c, c);
        for (int j = 0; j < n; ++j) { a(c, j) *= s; inv(c, j) *= s; }
        for (int i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace arrdual::exactla
