#include "srweyl/algebra/matrix.hpp"

#include <numeric>
#include <sstream>

#include "srweyl/error.hpp"

namespace srweyl::algebra {

namespace {

std::size_t matrix_nvars(const PolyMatrix& m) {
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) nvars = std::max(nvars, m(i, j).nvars());
  }
  return nvars;
}

// Fraction-free elimination state. After k pivots, the k-th pivot equals the
// determinant of the leading k x k minor of the permuted matrix.
struct Elimination {
  PolyMatrix work;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::size_t pivots = 0;
  int sign = 1;
  Poly last_pivot;
};

void swap_rows(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// Runs Bareiss with full pivoting, choosing the sparsest nonzero candidate.
// `max_pivots` limits the number of steps.
Elimination bareiss(const PolyMatrix& m, bool full_pivoting, std::size_t max_pivots) {
  const std::size_t nvars = matrix_nvars(m);
  Elimination e;
  e.work = m;
  e.row_perm.resize(m.rows());
  e.col_perm.resize(m.cols());
  std::iota(e.row_perm.begin(), e.row_perm.end(), 0);
  std::iota(e.col_perm.begin(), e.col_perm.end(), 0);
  e.last_pivot = Poly::constant(nvars, 1);
  PolyMatrix& w = e.work;
  const std::size_t limit = std::min({m.rows(), m.cols(), max_pivots});

  for (std::size_t k = 0; k < limit; ++k) {
    std::size_t best_r = k, best_c = k, best_size = 0;
    bool found = false;
    const std::size_t col_end = full_pivoting ? w.cols() : k + 1;
    for (std::size_t c = k; c < col_end && !(found && best_size == 1); ++c) {
      for (std::size_t r = k; r < w.rows(); ++r) {
        const Poly& v = w(r, c);
        if (v.is_zero()) continue;
        if (!found || v.size() < best_size) {
          found = true;
          best_r = r;
          best_c = c;
          best_size = v.size();
          if (best_size == 1) break;
        }
      }
    }
    if (!found) break;
    if (best_r != k) {
      swap_rows(w, k, best_r);
      std::swap(e.row_perm[k], e.row_perm[best_r]);
      e.sign = -e.sign;
    }
    if (best_c != k) {
      swap_cols(w, k, best_c);
      std::swap(e.col_perm[k], e.col_perm[best_c]);
      e.sign = -e.sign;
    }
    const Poly pivot = w(k, k);
    for (std::size_t i = k + 1; i < w.rows(); ++i) {
      const Poly factor = w(i, k);
      for (std::size_t j = k + 1; j < w.cols(); ++j) {
        Poly value = pivot * w(i, j);
        if (!factor.is_zero() && !w(k, j).is_zero()) value -= factor * w(k, j);
        if (e.last_pivot.is_constant()) {
          value *= 1 / e.last_pivot.leading_coefficient();
        } else if (!value.is_zero()) {
          auto q = divide_exact(value, e.last_pivot);
          if (!q) throw InternalInconsistency("fraction-free elimination: inexact division");
          value = std::move(*q);
        }
        w(i, j) = std::move(value);
      }
      w(i, k) = Poly(nvars);
    }
    e.last_pivot = pivot;
    e.pivots = k + 1;
  }
  return e;
}

}  // namespace

PolyMatrix zero_poly_matrix(std::size_t rows, std::size_t cols, std::size_t nvars) {
  return PolyMatrix(rows, cols, Poly(nvars));
}

PolyMatrix poly_identity(std::size_t size, std::size_t nvars) {
  PolyMatrix m = zero_poly_matrix(size, size, nvars);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = Poly::constant(nvars, 1);
  return m;
}

QMatrix evaluate(const PolyMatrix& m, std::span<const Rational> point) {
  QMatrix out(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
  }
  return out;
}

PolyMatrix specialize(const PolyMatrix& m, std::span<const std::pair<std::size_t, Rational>> values) {
  PolyMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).specialize(values);
  }
  return out;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidStructure("matrix product: inner dimensions differ");
  const std::size_t nvars = std::max(matrix_nvars(a), matrix_nvars(b));
  PolyMatrix out = zero_poly_matrix(a.rows(), b.cols(), nvars);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidStructure("determinant of a non-square matrix");
  const std::size_t nvars = matrix_nvars(m);
  if (m.rows() == 0) return Poly::constant(nvars, 1);
  Elimination e = bareiss(m, true, m.rows());
  if (e.pivots < m.rows()) return Poly(nvars);
  Poly det = e.work(m.rows() - 1, m.rows() - 1);
  return e.sign < 0 ? -det : det;
}

RankWitness rank_and_minor(const PolyMatrix& m, std::size_t size) {
  Elimination e = bareiss(m, true, std::min(m.rows(), m.cols()));
  RankWitness out;
  out.rank = e.pivots;
  if (size <= e.pivots) {
    std::vector<std::size_t> rows(e.row_perm.begin(), e.row_perm.begin() + static_cast<long>(size));
    std::vector<std::size_t> cols(e.col_perm.begin(), e.col_perm.begin() + static_cast<long>(size));
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    out.rows = std::move(rows);
    out.cols = std::move(cols);
  }
  return out;
}

CramerSolution cramer_solve(const PolyMatrix& m, std::span<const Poly> b, std::span<const std::size_t> rows) {
  const std::size_t n = m.cols();
  if (rows.size() != n) throw InvalidStructure("Cramer subsystem must be square");
  std::vector<std::size_t> all_cols(n);
  std::iota(all_cols.begin(), all_cols.end(), 0);
  PolyMatrix sub = m.submatrix(rows, all_cols);
  CramerSolution sol;
  sol.rows.assign(rows.begin(), rows.end());
  sol.denominator = determinant(sub);
  if (sol.denominator.is_zero()) throw RankDeficient("Cramer subsystem is singular");
  sol.numerators.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    PolyMatrix replaced = sub;
    for (std::size_t i = 0; i < n; ++i) replaced(i, k) = b[rows[i]];
    sol.numerators.push_back(determinant(replaced));
  }
  return sol;
}

Poly cramer_residual(const PolyMatrix& m, std::span<const Poly> b, const CramerSolution& sol, std::size_t r) {
  Poly res = -(b[r] * sol.denominator);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    if (!m(r, k).is_zero() && !sol.numerators[k].is_zero()) res += m(r, k) * sol.numerators[k];
  }
  return res;
}

LinearSolveResult solve_linear(const PolyMatrix& m, std::span<const Poly> b) {
  if (b.size() != m.rows()) throw InvalidStructure("right-hand side length differs from row count");
  RankWitness w = rank_and_minor(m, m.cols());
  if (w.rank < m.cols() || !w.rows) throw RankDeficient("system lacks full column rank");
  CramerSolution sol = cramer_solve(m, b, *w.rows);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!cramer_residual(m, b, sol, r).is_zero()) return Inconsistent{r};
  }
  std::vector<RationalFunction> x;
  x.reserve(m.cols());
  for (const Poly& num : sol.numerators) x.emplace_back(num, sol.denominator);
  return x;
}

bool is_skew(const PolyMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m(i, i).is_zero()) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (!(m(i, j) == -m(j, i))) return false;
    }
  }
  return true;
}

namespace {

Poly pfaffian_rec(const PolyMatrix& m, std::vector<std::size_t>& idx, std::size_t nvars) {
  if (idx.empty()) return Poly::constant(nvars, 1);
  const std::size_t first = idx.front();
  Poly total(nvars);
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const Poly& entry = m(first, idx[j]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (k != j) rest.push_back(idx[k]);
    }
    Poly minor = pfaffian_rec(m, rest, nvars);
    if (minor.is_zero()) continue;
    // Sign (-1)^(j+1) with j counted from 1 for the first partner.
    if (j % 2 == 1) {
      total += entry * minor;
    } else {
      total -= entry * minor;
    }
  }
  return total;
}

}  // namespace

Poly pfaffian(const PolyMatrix& m) {
  if (!is_skew(m) || m.rows() % 2 != 0) throw NotSkewEven("Pfaffian needs an even skew-symmetric matrix");
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return pfaffian_rec(m, idx, matrix_nvars(m));
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(sel, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const QMatrix& m) {
  QMatrix copy = m;
  return rref(copy).size();
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidStructure("determinant of a non-square matrix");
  QMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = k;
    while (sel < n && a(sel, k) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(sel, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  QMatrix r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

QVector multiply(const QMatrix& m, std::span<const Rational> v) {
  QVector out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  }
  return out;
}

std::string to_string(const PolyMatrix& m, std::span<const std::string> names) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) out << ", ";
    out << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ", ";
      out << m(i, j).to_string(names);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace srweyl::algebra
