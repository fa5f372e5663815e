#pragma once

// Dense matrices over Q(v) and fraction-free (Bareiss) linear solving.

#include "qcanon/ratfunc.hpp"

#include <utility>
#include <vector>

namespace qcanon {

class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, RatFunc(0)) {}

  static ExactMatrix identity(size_t n) {
    ExactMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = RatFunc(1);
    return m;
  }

  [[nodiscard]] size_t rows() const noexcept { return rows_; }
  [[nodiscard]] size_t cols() const noexcept { return cols_; }
  RatFunc& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const RatFunc& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::vector<RatFunc> apply(const std::vector<RatFunc>& x) const {
    if (x.size() != cols_) throw DomainError("ExactMatrix::apply: dimension mismatch");
    std::vector<RatFunc> y(rows_, RatFunc(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<RatFunc> data_;
};

struct SolveResult {
  std::vector<RatFunc> x;
  size_t rank = 0;
  size_t free_rank = 0;  // dimension of the solution space of the homogeneous system
};

struct MultiSolveResult {
  ExactMatrix x;  // one solution column per right-hand side
  size_t rank = 0;
  size_t free_rank = 0;
};

namespace detail {

inline LaurentPoly laurent_lcm(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return (a * b).exact_div(laurent_gcd(a, b));
}

}  // namespace detail

/// Solve A X = B exactly. Elimination runs fraction-free over Z[v,v^-1] after
/// clearing row denominators; back-substitution runs in Q(v). Free variables
/// are set to zero. Throws Inconsistent if some column of B is not in the
/// column space of A.
inline MultiSolveResult solve_exact(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("solve_exact: row count mismatch");
  const size_t m = a.rows(), n = a.cols(), k = b.cols(), w = n + k;

  std::vector<std::vector<LaurentPoly>> mat(m, std::vector<LaurentPoly>(w));
  for (size_t i = 0; i < m; ++i) {
    LaurentPoly l(1);
    for (size_t j = 0; j < n; ++j) l = detail::laurent_lcm(l, a(i, j).den());
    for (size_t j = 0; j < k; ++j) l = detail::laurent_lcm(l, b(i, j).den());
    for (size_t j = 0; j < n; ++j) mat[i][j] = a(i, j).num() * l.exact_div(a(i, j).den());
    for (size_t j = 0; j < k; ++j) mat[i][n + j] = b(i, j).num() * l.exact_div(b(i, j).den());
  }

  // Bareiss forward elimination.
  std::vector<size_t> pivot_cols;
  LaurentPoly prev(1);
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t p = row;
    while (p < m && mat[p][col].is_zero()) ++p;
    if (p == m) continue;
    std::swap(mat[p], mat[row]);
    const LaurentPoly& piv = mat[row][col];
    for (size_t i = row + 1; i < m; ++i) {
      const LaurentPoly factor = mat[i][col];
      for (size_t j = col + 1; j < w; ++j) {
        LaurentPoly t = piv * mat[i][j];
        if (!factor.is_zero() && !mat[row][j].is_zero()) t -= factor * mat[row][j];
        mat[i][j] = t.exact_div(prev);
      }
      mat[i][col] = LaurentPoly();
    }
    prev = mat[row][col];
    pivot_cols.push_back(col);
    ++row;
  }
  const size_t rank = row;

  for (size_t i = rank; i < m; ++i)
    for (size_t j = n; j < w; ++j)
      if (!mat[i][j].is_zero()) throw Inconsistent("solve_exact: inconsistent system", rank);

  MultiSolveResult out{ExactMatrix(n, k), rank, n - rank};
  for (size_t c = 0; c < k; ++c) {
    std::vector<RatFunc> x(n, RatFunc(0));
    for (size_t r = rank; r-- > 0;) {
      const size_t pc = pivot_cols[r];
      RatFunc acc(mat[r][n + c]);
      for (size_t j = pc + 1; j < n; ++j)
        if (!mat[r][j].is_zero() && !x[j].is_zero()) acc -= RatFunc(mat[r][j]) * x[j];
      x[pc] = acc / RatFunc(mat[r][pc]);
    }
    for (size_t j = 0; j < n; ++j) out.x(j, c) = std::move(x[j]);
  }
  return out;
}

inline SolveResult solve_exact(const ExactMatrix& a, const std::vector<RatFunc>& rhs) {
  ExactMatrix b(rhs.size(), 1);
  for (size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  MultiSolveResult r = solve_exact(a, b);
  SolveResult out;
  out.rank = r.rank;
  out.free_rank = r.free_rank;
  out.x.reserve(a.cols());
  for (size_t j = 0; j < a.cols(); ++j) out.x.push_back(r.x(j, 0));
  return out;
}

/// Rank via the same fraction-free elimination (no right-hand side).
inline size_t exact_rank(const ExactMatrix& a) {
  return solve_exact(a, ExactMatrix(a.rows(), 0)).rank;
}

}  // namespace qcanon
