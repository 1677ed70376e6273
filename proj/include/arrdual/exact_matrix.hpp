#pragma once

#include "arrdual/errors.hpp"
#include "arrdual/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace arrdual::exactla {

// Dense rational matrix, row-major. Values are immutable in spirit: all
// operations below are pure and return fresh matrices.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    ExactMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static ExactMatrix identity(int n);
    static ExactMatrix from_strings(const std::vector<std::vector<std::string>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rational& operator()(int i, int j) const { return data_[idx(i, j)]; }
    Rational& operator()(int i, int j) { return data_[idx(i, j)]; }

    bool operator==(const ExactMatrix& other) const = default;

    ExactMatrix transpose() const;
    ExactMatrix mul(const ExactMatrix& rhs) const;
    ExactMatrix select_columns(const std::vector<int>& cols) const;
    ExactMatrix select_rows(const std::vector<int>& rows) const;
    ExactMatrix vstack(const ExactMatrix& below) const;
    std::vector<Rational> row(int i) const;
    std::vector<Rational> col(int j) const;
    bool is_zero() const;

    std::vector<std::vector<std::string>> to_strings() const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

// Exact rank by fraction-free (Bareiss) elimination.
int rank(const ExactMatrix& m);

// Determinant of a square matrix, fraction-free elimination.
Rational det(const ExactMatrix& m);

// Determinant of the square submatrix picked by strictly increasing row and
// column index lists of equal length.
Rational minor(const ExactMatrix& m, const std::vector<int>& row_idx,
               const std::vector<int>& col_idx);

// Rows form a basis of { v : m v = 0 }. Row count = cols - rank.
ExactMatrix nullspace_basis(const ExactMatrix& m);

// Extends a full-row-rank matrix to an invertible square one by appending
// standard basis vectors, lowest index first whenever it raises the rank.
ExactMatrix complete_to_square(const ExactMatrix& b);

// Inverse of a square invertible matrix (rational Gauss-Jordan).
ExactMatrix inverse(const ExactMatrix& m);

}  // namespace arrdual::exactla
