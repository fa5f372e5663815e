#pragma once

// Quantum integers, factorials, binomials and checks of three binomial identities.

#include "qcanon/laurent.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace qcanon {

/// [a] = (v^a - v^-a)/(v - v^-1)
inline LaurentPoly qint(int a) {
  if (a == 0) return {};
  const int n = a < 0 ? -a : a;
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(static_cast<size_t>(n));
  for (int e = -(n - 1); e <= n - 1; e += 2) terms.emplace_back(e, Integer(a < 0 ? -1 : 1));
  return LaurentPoly::from_terms(std::move(terms));
}

/// [b]! with [0]! = 1 and [-b]! = (-1)^b [b]!.
inline LaurentPoly qfact(int b) {
  const int n = b < 0 ? -b : b;
  LaurentPoly r(1);
  for (int h = 2; h <= n; ++h) r *= qint(h);
  if (b < 0 && n % 2 == 1) r = -r;
  return r;
}

namespace detail {

// v^n - v^-n
inline LaurentPoly vdiff(int n) {
  if (n == 0) return {};
  return LaurentPoly::from_terms({{n, Integer(1)}, {-n, Integer(-1)}});
}

// prod_{h=1}^{b} (v^{c-h+1} - v^{-(c-h+1)}) / (v^h - v^-h), b >= 1
inline LaurentPoly binom_product(int c, int b) {
  LaurentPoly num(1), den(1);
  for (int h = 1; h <= b; ++h) {
    num *= vdiff(c - h + 1);
    if (num.is_zero()) return {};
    den *= vdiff(h);
  }
  return num.exact_div(den);
}

}  // namespace detail

/// Gaussian binomial [a over b]: 0 for b < 0, 1 for b = 0, product formula otherwise.
inline LaurentPoly qbinom(int a, int b) {
  if (b < 0) return {};
  if (b == 0) return LaurentPoly(1);
  static std::mutex mu;
  static std::map<std::pair<int, int>, LaurentPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
  }
  LaurentPoly r = detail::binom_product(a, b);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(std::make_pair(a, b), std::move(r)).first->second;
}

/// [k_i; c over a] evaluated on a vector where k_i acts by v^w.
inline LaurentPoly ki_binom_at(int c, int a, int w) {
  if (a < 0) throw DomainError("ki_binom_at: a must be nonnegative");
  if (a == 0) return LaurentPoly(1);
  return detail::binom_product(w + c, a);
}

/// Outcome of an identity check; on failure both sides are kept in text form.
struct IdentityCheck {
  bool ok = true;
  std::string lhs;
  std::string rhs;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline LaurentPoly sgn(int k) { return LaurentPoly(k % 2 == 0 ? 1 : -1); }

inline IdentityCheck compare_sides(const LaurentPoly& l, const LaurentPoly& r) {
  IdentityCheck c;
  c.ok = l == r;
  if (!c.ok) {
    c.lhs = l.to_string();
    c.rhs = r.to_string();
  }
  return c;
}

}  // namespace detail

/// Both sides of [m+n over r] = sum_t v^{t(m+n)-nr} [m over r-t][n over t].
inline std::pair<LaurentPoly, LaurentPoly> lemma41a_sides(int n, int r, int m) {
  if (n < 0 || r < 0) throw DomainError("lemma41a: n, r must be nonnegative");
  LaurentPoly rhs;
  for (int t = 0; t <= std::min(n, r); ++t)
    rhs += (qbinom(m, r - t) * qbinom(n, t)).shifted(t * (m + n) - n * r);
  return {qbinom(m + n, r), rhs};
}

inline std::pair<LaurentPoly, LaurentPoly> lemma41b_sides(int m, int k, int delta) {
  if (k < 0 || m < k) throw DomainError("lemma41b: need m >= k >= 0");
  if (delta < 0) throw DomainError("lemma41b: delta must be nonnegative");
  LaurentPoly lhs;
  for (int i = 0; i <= delta; ++i)
    lhs += detail::sgn(i) * (qbinom(k + i - 1, i) * qbinom(m, delta - i)).shifted(i * (m - k));
  return {lhs, qbinom(m - k, delta).shifted(-k * delta)};
}

inline std::pair<LaurentPoly, LaurentPoly> lemma41c_sides(int a, int c, int u, int r, int b) {
  if (c < 0 || a < c) throw DomainError("lemma41c: need a >= c >= 0");
  if (u < 0 || r < 0) throw DomainError("lemma41c: u, r must be nonnegative");
  LaurentPoly lhs, rhs;
  for (int f = 0; f <= u; ++f)
    lhs += detail::sgn(f) *
           (qbinom(a - c + f - 1, f) * qbinom(b + r - f, r) * qbinom(a + u, u - f)).shifted(f * (u + c - r));
  for (int d = 0; d <= std::min(u, r); ++d)
    rhs += (qbinom(b + r - u, r - d) * qbinom(c + u - d, u - d) * qbinom(a + u, d))
               .shifted(d * b + (u - d) * (c - a - r));
  return {lhs, rhs};
}

inline IdentityCheck lemma41a_check(int n, int r, int m) {
  auto [l, rr] = lemma41a_sides(n, r, m);
  return detail::compare_sides(l, rr);
}
inline IdentityCheck lemma41b_check(int m, int k, int delta) {
  auto [l, r] = lemma41b_sides(m, k, delta);
  return detail::compare_sides(l, r);
}
inline IdentityCheck lemma41c_check(int a, int c, int u, int r, int b) {
  auto [l, rr] = lemma41c_sides(a, c, u, r, b);
  return detail::compare_sides(l, rr);
}

}  // namespace qcanon
