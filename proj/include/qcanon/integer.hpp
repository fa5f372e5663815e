#pragma once

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t never touch the heap; any operation that would
// overflow is redone in GMP and the result is demoted back when it fits again.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcanon {

class Integer {
public:
  Integer() noexcept = default;
  Integer(int64_t x) noexcept : small_(x) {}  // NOLINT: implicit by design of arithmetic use
  Integer(int x) noexcept : small_(x) {}      // NOLINT
  explicit Integer(const mpz_class& z) { assign_big(z); }

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  static Integer parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + s);
    return Integer(z);
  }

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] int64_t small_value() const noexcept { return small_; }

  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && small_ == 1; }
  [[nodiscard]] int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }

  [[nodiscard]] mpz_class to_mpz() const { return big_ ? *big_ : mpz_from(small_); }

  [[nodiscard]] std::string to_string() const {
    return big_ ? big_->get_str(10) : std::to_string(small_);
  }

  Integer& operator+=(const Integer& o) {
    if (!big_ && !o.big_) {
      int64_t r;
      if (!__builtin_add_overflow(small_, o.small_, &r)) {
        small_ = r;
        return *this;
      }
    }
    assign_big(to_mpz() + o.to_mpz());
    return *this;
  }
  Integer& operator-=(const Integer& o) {
    if (!big_ && !o.big_) {
      int64_t r;
      if (!__builtin_sub_overflow(small_, o.small_, &r)) {
        small_ = r;
        return *this;
      }
    }
    assign_big(to_mpz() - o.to_mpz());
    return *this;
  }
  Integer& operator*=(const Integer& o) {
    if (!big_ && !o.big_) {
      int64_t r;
      if (!__builtin_mul_overflow(small_, o.small_, &r)) {
        small_ = r;
        return *this;
      }
    }
    assign_big(to_mpz() * o.to_mpz());
    return *this;
  }

  // this += a * b, the inner loop of every polynomial product.
  void add_mul(const Integer& a, const Integer& b) {
    if (!big_ && !a.big_ && !b.big_) {
      int64_t p, r;
      if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
          !__builtin_add_overflow(small_, p, &r)) {
        small_ = r;
        return;
      }
    }
    assign_big(to_mpz() + a.to_mpz() * b.to_mpz());
  }

  Integer operator-() const {
    Integer r(*this);
    r.negate();
    return r;
  }
  void negate() {
    if (!big_ && small_ != INT64_MIN) {
      small_ = -small_;
      return;
    }
    assign_big(-to_mpz());
  }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  // True iff d divides *this.
  [[nodiscard]] bool divisible_by(const Integer& d) const {
    if (d.is_zero()) return is_zero();
    if (!big_ && !d.big_) {
      if (d.small_ == -1) return true;
      return small_ % d.small_ == 0;
    }
    return mpz_divisible_p(to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t()) != 0;
  }

  // Exact quotient; caller guarantees divisibility.
  [[nodiscard]] Integer divexact(const Integer& d) const {
    if (!big_ && !d.big_ && !(small_ == INT64_MIN && d.small_ == -1)) return Integer(small_ / d.small_);
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t());
    return Integer(q);
  }

  [[nodiscard]] Integer abs() const { return sign() < 0 ? -*this : *this; }

  friend Integer gcd(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small() && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
      int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
      int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
      while (y != 0) {
        int64_t t = x % y;
        x = y;
        y = t;
      }
      return Integer(x);
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(g);
  }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // normalized: a big value never fits in int64
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  [[nodiscard]] size_t hash() const {
    if (!big_) return std::hash<int64_t>{}(small_);
    return std::hash<std::string>{}(big_->get_str(16));
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& x) { return os << x.to_string(); }

private:
  static mpz_class mpz_from(int64_t x) {
    mpz_class z;
    // mpz_set_si takes long, which is 64-bit on the supported LP64 targets.
    mpz_set_si(z.get_mpz_t(), static_cast<long>(x));
    return z;
  }

  void assign_big(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) {
      small_ = mpz_get_si(z.get_mpz_t());
      big_.reset();
    } else {
      small_ = 0;
      if (big_) *big_ = z;
      else big_ = std::make_unique<mpz_class>(z);
    }
  }

  int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

}  // namespace qcanon
