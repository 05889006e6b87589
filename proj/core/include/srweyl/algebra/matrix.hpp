#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "srweyl/algebra/poly.hpp"
#include "srweyl/algebra/rational_function.hpp"

namespace srweyl::algebra {

/// Dense matrix with entries of type T, row-major.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<long>(r * cols_),
                          data_.begin() + static_cast<long>((r + 1) * cols_));
  }

  Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    Matrix out(row_idx.size(), col_idx.size(), fill_value());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
      for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_, fill_value());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  /// Vertical concatenation; column counts must agree.
  void append_rows(const Matrix& other) {
    if (rows_ == 0) {
      *this = other;
      return;
    }
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  T fill_value() const { return data_.empty() ? T() : data_.front() * 0; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using PolyMatrix = Matrix<Poly>;
using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

PolyMatrix zero_poly_matrix(std::size_t rows, std::size_t cols, std::size_t nvars);
PolyMatrix poly_identity(std::size_t size, std::size_t nvars);
QMatrix evaluate(const PolyMatrix& m, std::span<const Rational> point);
PolyMatrix specialize(const PolyMatrix& m, std::span<const std::pair<std::size_t, Rational>> values);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);

// --- symbolic determinants and ranks ----------------------------------------------

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
Poly determinant(const PolyMatrix& m);

struct RankWitness {
  std::size_t rank = 0;
  /// Rows and columns of a nonzero minor of the requested size (empty when
  /// the requested size exceeds the rank).
  std::optional<std::vector<std::size_t>> rows;
  std::optional<std::vector<std::size_t>> cols;
};

/// Rank of m over the fraction field, with a witness nonzero minor of the
/// requested size. Uses fraction-free elimination with full pivoting.
RankWitness rank_and_minor(const PolyMatrix& m, std::size_t size);

/// Cramer data for the square subsystem picked by `rows`: x_k = numerators[k] / denominator.
struct CramerSolution {
  std::vector<std::size_t> rows;
  Poly denominator;
  std::vector<Poly> numerators;
};

/// Solves m[rows] x = b[rows] by Cramer's rule (Bareiss determinants).
/// Throws RankDeficient when that square subsystem is singular.
CramerSolution cramer_solve(const PolyMatrix& m, std::span<const Poly> b, std::span<const std::size_t> rows);

/// Residual of row r for a Cramer solution: sum_k m(r,k) * num_k - b_r * den.
Poly cramer_residual(const PolyMatrix& m, std::span<const Poly> b, const CramerSolution& sol, std::size_t r);

struct Inconsistent {
  std::size_t row;  ///< first row violated by the witness solution
};

using LinearSolveResult = std::variant<std::vector<RationalFunction>, Inconsistent>;

/// Unique solution over the fraction field, re-substituted into every row.
/// Throws RankDeficient when m lacks full column rank.
LinearSolveResult solve_linear(const PolyMatrix& m, std::span<const Poly> b);

// --- skew forms ---------------------------------------------------------------------

bool is_skew(const PolyMatrix& m);

/// Pfaffian by expansion along the first row. Throws NotSkewEven.
Poly pfaffian(const PolyMatrix& m);

// --- rational matrices ----------------------------------------------------------------

std::size_t rank(const QMatrix& m);
Rational determinant(const QMatrix& m);

/// Basis of the right kernel from the reduced row echelon form (one vector per
/// free column, with a 1 in that column).
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

QVector multiply(const QMatrix& m, std::span<const Rational> v);

std::string to_string(const PolyMatrix& m, std::span<const std::string> names);

}  // namespace srweyl::algebra
