#pragma once

// Elements of Q(v) as reduced quotients of Laurent polynomials.

#include "qcanon/laurent.hpp"

#include <string>
#include <utility>

namespace qcanon {

namespace detail {

inline const Integer& leading_coeff(const LaurentPoly& p) { return p.terms().back().second; }

// Multiply away any power of v so the lowest exponent is 0 (v is a unit).
inline LaurentPoly strip_vpower(const LaurentPoly& p) { return p.is_zero() ? p : p.shifted(-p.min_exp()); }

inline LaurentPoly primitive_part(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Integer c = p.content();
  if (leading_coeff(p).sign() < 0) c.negate();
  if (c.is_one()) return p;
  return p.exact_div(LaurentPoly(c));
}

// A nonzero multiple of the remainder of a modulo b, both with lowest exponent 0.
inline LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b) {
  const int db = b.max_exp();
  const Integer& lb = leading_coeff(b);
  while (!a.is_zero() && a.max_exp() >= db) {
    const Integer la = leading_coeff(a);
    const int k = a.max_exp() - db;
    a = a.scaled(lb, 0) - b.scaled(la, k);
  }
  return a;
}

}  // namespace detail

/// gcd in Z[v,v^-1], normalized to lowest exponent 0 and positive leading coefficient.
inline LaurentPoly laurent_gcd(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero()) return detail::primitive_part(detail::strip_vpower(y)).scaled(y.is_zero() ? Integer(1) : y.content(), 0);
  if (y.is_zero()) return laurent_gcd(y, x);
  const Integer cont = gcd(x.content(), y.content());
  LaurentPoly a = detail::primitive_part(detail::strip_vpower(x));
  LaurentPoly b = detail::primitive_part(detail::strip_vpower(y));
  if (a.max_exp() < b.max_exp()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.max_exp() == 0) {  // nonzero constant after primitive reduction: coprime
      a = LaurentPoly(1);
      break;
    }
    LaurentPoly r = detail::primitive_part(detail::strip_vpower(detail::pseudo_remainder(a, b)));
    a = std::move(b);
    b = std::move(r);
  }
  return a.scaled(cont, 0);
}

class RatFunc {
public:
  RatFunc() : den_(1) {}
  RatFunc(LaurentPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT: Laurent polynomials embed
  RatFunc(int64_t c) : num_(c), den_(1) {}                       // NOLINT
  RatFunc(int c) : num_(c), den_(1) {}                           // NOLINT
  RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("RatFunc with zero denominator");
    normalize();
  }

  [[nodiscard]] const LaurentPoly& num() const noexcept { return num_; }
  [[nodiscard]] const LaurentPoly& den() const noexcept { return den_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  [[nodiscard]] bool is_laurent() const noexcept { return den_.is_one(); }

  [[nodiscard]] LaurentPoly to_laurent() const {
    if (!is_laurent()) throw NotDivisible("rational function is not a Laurent polynomial: " + to_string());
    return num_;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  RatFunc operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ * b.num_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("RatFunc division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  [[nodiscard]] RatFunc bar() const { return RatFunc(num_.bar(), den_.bar()); }

  // Normal form is canonical, so structural equality is mathematical equality.
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Equality by cross-multiplication; independent of normalization.
  [[nodiscard]] bool cross_equal(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

  [[nodiscard]] size_t hash() const { return num_.hash() * 1000003u ^ den_.hash(); }

  [[nodiscard]] std::string to_string() const {
    if (is_laurent()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    LaurentPoly g = laurent_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    const int k = -den_.min_exp();
    if (k != 0) {
      num_ = num_.shifted(k);
      den_ = den_.shifted(k);
    }
    if (detail::leading_coeff(den_).sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace qcanon
