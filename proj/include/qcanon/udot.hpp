#pragma once

// Formal elements of the modified algebra: Laurent combinations of words
// X 1_(l,m) Y in divided powers, with sigma, bar, index swap and evaluation on T.

#include "qcanon/tensor.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace qcanon {

struct Factor {
  Gen gen;
  int exp = 1;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// left 1_idem right, written order; the rightmost factor acts first.
struct UdotWord {
  std::vector<Factor> left;
  Weight idem;
  std::vector<Factor> right;

  friend auto operator<=>(const UdotWord&, const UdotWord&) = default;

  static UdotWord make(std::vector<Factor> left, Weight idem, std::vector<Factor> right) {
    auto strip = [](std::vector<Factor>& fs) {
      fs.erase(std::remove_if(fs.begin(), fs.end(), [](const Factor& f) { return f.exp == 0; }), fs.end());
      for (const auto& f : fs)
        if (f.exp < 0) throw DomainError("negative divided power " + f.gen.to_string() + "^" + std::to_string(f.exp));
    };
    strip(left);
    strip(right);
    return {std::move(left), idem, std::move(right)};
  }

  /// Weight an input vector must have so that the idempotent does not kill it.
  [[nodiscard]] Weight source_weight() const {
    Weight w = idem;
    for (const auto& f : right) w = w - f.gen.shift(f.exp);
    return w;
  }
  [[nodiscard]] Weight target_weight() const {
    Weight w = idem;
    for (const auto& f : left) w = w + f.gen.shift(f.exp);
    return w;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    auto put = [&](const std::string& x) {
      if (!s.empty()) s += ' ';
      s += x;
    };
    for (const auto& f : left) put(f.gen.to_string() + "^" + std::to_string(f.exp));
    put("1[" + idem.to_string() + "]");
    for (const auto& f : right) put(f.gen.to_string() + "^" + std::to_string(f.exp));
    return s;
  }

  /// Grammar: factors `e1^3` (exponent optional) separated by spaces, exactly one `1[(l,m)]`.
  static UdotWord parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    std::vector<Factor> left, right;
    std::optional<Weight> idem;
    while (in >> tok) {
      if (tok.rfind("1[", 0) == 0) {
        if (idem) throw ParseError("word has two idempotents: " + std::string(text));
        int l = 0, m = 0;
        char tail = 0;
        if (std::sscanf(tok.c_str(), "1[(%d,%d)%c", &l, &m, &tail) != 3 || tail != ']' ||
            tok.back() != ']' || tok.find(')') + 2 != tok.size())
          throw ParseError("bad idempotent: " + tok);
        idem = Weight{l, m};
        continue;
      }
      if (tok.size() < 2 || (tok[0] != 'e' && tok[0] != 'f') || (tok[1] != '1' && tok[1] != '2'))
        throw ParseError("bad factor: " + tok);
      int exp = 1;
      if (tok.size() > 2) {
        if (tok[2] != '^' || tok.size() == 3) throw ParseError("bad factor: " + tok);
        for (size_t i = 3; i < tok.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(tok[i]))) throw ParseError("bad exponent: " + tok);
        exp = std::stoi(tok.substr(3));
      }
      Factor f{Gen{tok[0] == 'e' ? GenKind::E : GenKind::F, tok[1] - '0'}, exp};
      (idem ? right : left).push_back(f);
    }
    if (!idem) throw ParseError("word has no idempotent: " + std::string(text));
    return make(std::move(left), *idem, std::move(right));
  }
};

/// Finite Laurent combination of words; like terms combined, zero terms dropped.
class UdotExpr {
public:
  UdotExpr() = default;
  explicit UdotExpr(UdotWord w, LaurentPoly c = LaurentPoly(1)) { add(std::move(w), c); }

  void add(const UdotWord& w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const UdotExpr& x, const LaurentPoly& c = LaurentPoly(1)) {
    for (const auto& [w, a] : x.terms_) add(w, a * c);
  }

  [[nodiscard]] const std::map<UdotWord, LaurentPoly>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] size_t size() const { return terms_.size(); }
  friend bool operator==(const UdotExpr&, const UdotExpr&) = default;

  /// Common source weight of all words, if they agree.
  [[nodiscard]] std::optional<Weight> source_weight() const {
    std::optional<Weight> z;
    for (const auto& [w, c] : terms_) {
      if (z && *z != w.source_weight()) return std::nullopt;
      z = w.source_weight();
    }
    return z;
  }

  /// `(c) * word` terms joined by ` + `; a unit coefficient is omitted.
  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      if (!c.is_one()) s += "(" + c.to_string() + ") * ";
      s += w.to_string();
    }
    return s;
  }

  static UdotExpr parse(std::string_view text) {
    UdotExpr x;
    std::string t(text);
    if (t.find_first_not_of(" \t") == std::string::npos) throw ParseError("empty expression");
    if (t == "0") return x;
    // split on " + " outside parentheses
    std::vector<std::string> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      else if (t[i] == ')') --depth;
      else if (depth == 0 && t.compare(i, 3, " + ") == 0) {
        parts.push_back(t.substr(start, i - start));
        start = i + 3;
        i += 2;
      }
    }
    parts.push_back(t.substr(start));
    for (auto& part : parts) {
      size_t b = part.find_first_not_of(' ');
      if (b == std::string::npos) throw ParseError("empty term in expression");
      part = part.substr(b);
      LaurentPoly c(1);
      if (part[0] == '(') {
        int d = 0;
        size_t close = std::string::npos;
        for (size_t i = 0; i < part.size(); ++i) {
          if (part[i] == '(') ++d;
          if (part[i] == ')' && --d == 0) {
            close = i;
            break;
          }
        }
        if (close == std::string::npos || part.compare(close, 4, ") * ") != 0) throw ParseError("bad term: " + part);
        c = LaurentPoly::parse(part.substr(1, close - 1));
        part = part.substr(close + 4);
      }
      x.add(UdotWord::parse(part), c);
    }
    return x;
  }

private:
  std::map<UdotWord, LaurentPoly> terms_;
};

/// The anti-automorphism fixing e_i, f_i and sending 1_l to 1_-l.
inline UdotWord sigma(const UdotWord& w) {
  return UdotWord{{w.right.rbegin(), w.right.rend()}, -w.idem, {w.left.rbegin(), w.left.rend()}};
}
inline UdotExpr sigma(const UdotExpr& x) {
  UdotExpr y;
  for (const auto& [w, c] : x.terms()) y.add(sigma(w), c);
  return y;
}

inline UdotExpr bar_udot(const UdotExpr& x) {
  UdotExpr y;
  for (const auto& [w, c] : x.terms()) y.add(w, c.bar());
  return y;
}

inline UdotWord index_swap(const UdotWord& w) {
  auto swap = [](std::vector<Factor> fs) {
    for (auto& f : fs) f.gen.index = 3 - f.gen.index;
    return fs;
  };
  return UdotWord{swap(w.left), Weight{w.idem.l2, w.idem.l1}, swap(w.right)};
}
inline UdotExpr index_swap(const UdotExpr& x) {
  UdotExpr y;
  for (const auto& [w, c] : x.terms()) y.add(index_swap(w), c);
  return y;
}

/// x(xi (x) eta) in T.
inline TensorVec evaluate(const UdotExpr& x, const TensorSpace& T) {
  TensorVec out;
  std::map<std::vector<Factor>, TensorVec> right_cache;
  const Weight top = T.top_weight();
  for (const auto& [w, c] : x.terms()) {
    if (w.source_weight() != top) continue;  // the idempotent kills it
    auto it = right_cache.find(w.right);
    if (it == right_cache.end()) {
      TensorVec y = T.standard(T.top_pair());
      for (auto f = w.right.rbegin(); f != w.right.rend() && !y.empty(); ++f) y = delta_act(T, f->gen, f->exp, y);
      it = right_cache.emplace(w.right, std::move(y)).first;
    }
    TensorVec y = it->second;
    for (auto f = w.left.rbegin(); f != w.left.rend() && !y.empty(); ++f) y = delta_act(T, f->gen, f->exp, y);
    add_scaled(out, y, c);
  }
  return out;
}

inline TensorVec evaluate(const UdotExpr& x, TensorParams p) { return evaluate(x, *tensor_space(p)); }

}  // namespace qcanon
