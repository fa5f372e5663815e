#pragma once

// Small dense-matrix utilities for the test oracles.

#include "qcanon/module.hpp"

#include <vector>

namespace qtest {

using qcanon::LaurentPoly;
using Dense = std::vector<std::vector<LaurentPoly>>;

inline Dense zeros(size_t n) { return Dense(n, std::vector<LaurentPoly>(n)); }

inline Dense eye(size_t n) {
  Dense d = zeros(n);
  for (size_t i = 0; i < n; ++i) d[i][i] = LaurentPoly(1);
  return d;
}

inline Dense mul(const Dense& a, const Dense& b) {
  const size_t n = a.size();
  Dense c = zeros(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Dense add(const Dense& a, const Dense& b, int sign = 1) {
  Dense c = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) c[i][j] += sign > 0 ? b[i][j] : -b[i][j];
  return c;
}

inline Dense scale(const Dense& a, const LaurentPoly& s) {
  Dense c = a;
  for (auto& row : c)
    for (auto& x : row) x = x * s;
  return c;
}

inline bool is_zero(const Dense& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

// Divided power computed naively: plain matrix power, then division by [a]!.
inline Dense naive_divided(const Dense& g, int a) {
  Dense p = eye(g.size());
  for (int i = 0; i < a; ++i) p = mul(p, g);
  const LaurentPoly f = qcanon::qfact(a);
  for (auto& row : p)
    for (auto& x : row) x = x.exact_div(f);
  return p;
}

// Diagonal matrix with entries fn(weight of basis vector).
template <class Fn>
Dense diag_by_weight(const qcanon::ModuleRealization& m, Fn fn) {
  Dense d = zeros(m.dim());
  for (size_t i = 0; i < m.dim(); ++i) d[i][i] = fn(m.weights()[i]);
  return d;
}

inline int weyl_dim(int a, int b) { return (a + 1) * (b + 1) * (a + b + 2) / 2; }

}  // namespace qtest

#include "qcanon/tensor.hpp"

namespace qtest {

// Dense matrix of a generator on T assembled from the coproduct formulas
//   e -> e (x) 1 + K (x) e,   f -> f (x) K^-1 + 1 (x) f
// with K = k_i acting by v^<i,wt>. Independent of the divided-power split formula.
inline Dense tensor_generator(const qcanon::TensorSpace& T, qcanon::Gen g) {
  using namespace qcanon;
  const size_t n = T.dim();
  Dense d = zeros(n);
  const auto& lo = T.low();
  const auto& hi = T.high();
  for (size_t p = 0; p < n; ++p) {
    const size_t i = T.low_of(p), j = T.high_of(p);
    const int ki = lo.weights()[i].pair(g.index), kj = hi.weights()[j].pair(g.index);
    for (const auto& [r, x] : lo.gen(g).cols[i]) {
      // acting on the first factor
      const int e = g.kind == GenKind::E ? 0 : -kj;
      d[T.pair_index(r, j)][p] += x.shifted(e);
    }
    for (const auto& [r, x] : hi.gen(g).cols[j]) {
      const int e = g.kind == GenKind::E ? ki : 0;
      d[T.pair_index(i, r)][p] += x.shifted(e);
    }
  }
  return d;
}

inline std::vector<LaurentPoly> to_dense(const qcanon::TensorVec& x, size_t n) {
  std::vector<LaurentPoly> d(n);
  for (const auto& [p, c] : x) d[p] = c;
  return d;
}

inline std::vector<LaurentPoly> mat_apply(const Dense& m, const std::vector<LaurentPoly>& x) {
  std::vector<LaurentPoly> y(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (!m[i][j].is_zero() && !x[j].is_zero()) y[i] += m[i][j] * x[j];
  return y;
}

}  // namespace qtest
