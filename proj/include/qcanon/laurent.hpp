#pragma once

// Exact Laurent polynomials in Z[v, v^-1].

#include "qcanon/errors.hpp"
#include "qcanon/integer.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcanon {

class LaurentPoly {
public:
  using Term = std::pair<int, Integer>;  // (exponent, nonzero coefficient)

  LaurentPoly() = default;
  LaurentPoly(int64_t c) {  // NOLINT: constants promote implicitly
    if (c != 0) terms_.emplace_back(0, Integer(c));
  }
  LaurentPoly(int c) : LaurentPoly(static_cast<int64_t>(c)) {}  // NOLINT
  LaurentPoly(Integer c) {                                       // NOLINT
    if (!c.is_zero()) terms_.emplace_back(0, std::move(c));
  }

  static LaurentPoly monomial(Integer c, int exponent) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_.emplace_back(exponent, std::move(c));
    return p;
  }
  /// v^n
  static LaurentPoly vpow(int n) { return monomial(Integer(1), n); }

  /// Build from arbitrary (exponent, coefficient) pairs; duplicates are summed.
  static LaurentPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentPoly p;
    for (auto& [e, c] : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == e) p.terms_.back().second += c;
      else p.terms_.emplace_back(e, std::move(c));
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    }
    return p;
  }

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_one() const noexcept {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one();
  }
  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] int min_exp() const { return terms_.front().first; }
  [[nodiscard]] int max_exp() const { return terms_.back().first; }

  [[nodiscard]] Integer coeff(int exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return Integer(0);
  }

  /// True iff the polynomial lies in v^-1 Z[v^-1].
  [[nodiscard]] bool in_strict_negative_part() const { return is_zero() || max_exp() < 0; }
  /// True iff the polynomial lies in Z[v^-1].
  [[nodiscard]] bool in_nonpositive_part() const { return is_zero() || max_exp() <= 0; }

  LaurentPoly& operator+=(const LaurentPoly& o) { return merge(o, false); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return merge(o, true); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r(*this);
    for (auto& t : r.terms_) t.second.negate();
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.scaled(a.terms_[0].second, a.terms_[0].first);
    if (b.size() == 1) return a.scaled(b.terms_[0].second, b.terms_[0].first);
    const int lo = a.min_exp() + b.min_exp();
    const int span = a.max_exp() + b.max_exp() - lo + 1;
    std::vector<Integer> acc(static_cast<size_t>(span));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) acc[static_cast<size_t>(ea + eb - lo)].add_mul(ca, cb);
    LaurentPoly r;
    r.terms_.reserve(acc.size());
    for (size_t i = 0; i < acc.size(); ++i)
      if (!acc[i].is_zero()) r.terms_.emplace_back(lo + static_cast<int>(i), std::move(acc[i]));
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// c * v^shift * this
  [[nodiscard]] LaurentPoly scaled(const Integer& c, int shift) const {
    LaurentPoly r;
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, x] : terms_) r.terms_.emplace_back(e + shift, x * c);
    return r;
  }
  /// v^k * this
  [[nodiscard]] LaurentPoly shifted(int k) const {
    LaurentPoly r(*this);
    for (auto& t : r.terms_) t.first += k;
    return r;
  }

  /// The ring involution v -> v^-1.
  [[nodiscard]] LaurentPoly bar() const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
    return r;
  }

  /// Returns q with q * d == *this, or throws NotDivisible.
  [[nodiscard]] LaurentPoly exact_div(const LaurentPoly& d) const {
    if (d.is_zero()) throw NotDivisible("division by zero Laurent polynomial");
    if (is_zero()) return {};
    if (d.size() == 1) {
      const auto& [de, dc] = d.terms_[0];
      LaurentPoly q;
      q.terms_.reserve(terms_.size());
      for (const auto& [e, c] : terms_) {
        if (!c.divisible_by(dc)) throw NotDivisible(to_string() + " / " + d.to_string());
        q.terms_.emplace_back(e - de, c.divexact(dc));
      }
      return q;
    }
    // Long division from the lowest exponent upward.
    const int dlo = d.min_exp();
    const Integer& dlc = d.terms_.front().second;
    const int qmax = max_exp() - d.max_exp();
    std::vector<Term> q;
    LaurentPoly r(*this);
    while (!r.is_zero()) {
      const int e = r.min_exp() - dlo;
      const Integer& c = r.terms_.front().second;
      if (e > qmax || !c.divisible_by(dlc)) throw NotDivisible(to_string() + " / " + d.to_string());
      Integer qc = c.divexact(dlc);
      r -= d.scaled(qc, e);
      q.emplace_back(e, std::move(qc));
    }
    LaurentPoly out;
    out.terms_ = std::move(q);
    return out;
  }

  /// Integer gcd of all coefficients (0 for the zero polynomial).
  [[nodiscard]] Integer content() const {
    Integer g(0);
    for (const auto& t : terms_) {
      g = gcd(g, t.second);
      if (g.is_one()) break;
    }
    return g;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  [[nodiscard]] size_t hash() const {
    size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& [e, c] : terms_) h = (h ^ (static_cast<size_t>(e) * 0x100000001b3ULL)) * 31 + c.hash();
    return h;
  }

  /// Canonical text form: increasing exponent, `c*v^n`, e.g. `-v^-3 + 1 + 2*v^2`.
  [[nodiscard]] std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = c.sign() < 0;
      if (first) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      first = false;
      const Integer mag = c.abs();
      if (e == 0) {
        out += mag.to_string();
        continue;
      }
      if (!mag.is_one()) out += mag.to_string() + "*";
      out += "v";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  /// Inverse of to_string; tolerant of extra whitespace.
  static LaurentPoly parse(std::string_view text) {
    std::string s;
    for (size_t k = 0; k < text.size(); ++k) {
      const auto ch = static_cast<unsigned char>(text[k]);
      if (!std::isspace(ch)) {
        s += static_cast<char>(ch);
        continue;
      }
      // Whitespace may separate tokens but never split one ("2 3", "v ^2").
      size_t n = k;
      while (n < text.size() && std::isspace(static_cast<unsigned char>(text[n]))) ++n;
      if (!s.empty() && n < text.size() && std::isalnum(static_cast<unsigned char>(s.back())) &&
          (std::isalnum(static_cast<unsigned char>(text[n])) || text[n] == '^'))
        throw ParseError("Laurent polynomial '" + std::string(text) + "': whitespace inside a term");
      k = n - 1;
    }
    if (s.empty()) throw ParseError("empty Laurent polynomial");
    if (s == "0") return {};
    std::vector<Term> terms;
    size_t i = 0;
    auto fail = [&](const char* why) { throw ParseError(std::string("Laurent polynomial '") + s + "': " + why); };
    auto read_int = [&](bool allow_sign) {
      size_t start = i;
      if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      size_t digits = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == digits) fail("expected digits");
      return std::string_view(s).substr(start, i - start);
    };
    while (i < s.size()) {
      bool neg = false;
      if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
      } else if (!terms.empty()) {
        fail("expected '+' or '-' between terms");
      }
      Integer c(1);
      bool have_coeff = false;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        c = Integer::parse(read_int(false));
        have_coeff = true;
      }
      int e = 0;
      if (i < s.size() && (s[i] == '*' || s[i] == 'v')) {
        if (s[i] == '*') {
          if (!have_coeff) fail("'*' without coefficient");
          ++i;
        }
        if (i >= s.size() || s[i] != 'v') fail("expected 'v'");
        ++i;
        e = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          e = std::stoi(std::string(read_int(true)));
        }
      } else if (!have_coeff) {
        fail("expected a term");
      }
      if (neg) c.negate();
      terms.emplace_back(e, std::move(c));
    }
    return from_terms(std::move(terms));
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

private:
  LaurentPoly& merge(const LaurentPoly& o, bool subtract) {
    if (o.is_zero()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        out.push_back(std::move(terms_[i++]));
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        out.emplace_back(o.terms_[j].first, subtract ? -o.terms_[j].second : o.terms_[j].second);
        ++j;
      } else {
        Integer c = std::move(terms_[i].second);
        if (subtract) c -= o.terms_[j].second;
        else c += o.terms_[j].second;
        if (!c.is_zero()) out.emplace_back(terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  std::vector<Term> terms_;
};

struct LaurentHash {
  size_t operator()(const LaurentPoly& p) const { return p.hash(); }
};

}  // namespace qcanon
