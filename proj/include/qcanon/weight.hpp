#pragma once

// Weights of sl3 in fundamental-weight coordinates, generators, and the
// theta-monomial labels of the canonical basis of f.

#include "qcanon/errors.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qcanon {

struct Weight {
  int l1 = 0;
  int l2 = 0;

  /// <alpha_i^vee, (l1,l2)> = l_i
  [[nodiscard]] int pair(int i) const { return i == 1 ? l1 : l2; }

  friend Weight operator+(Weight a, Weight b) { return {a.l1 + b.l1, a.l2 + b.l2}; }
  friend Weight operator-(Weight a, Weight b) { return {a.l1 - b.l1, a.l2 - b.l2}; }
  Weight operator-() const { return {-l1, -l2}; }
  friend Weight operator*(int c, Weight a) { return {c * a.l1, c * a.l2}; }
  friend auto operator<=>(const Weight&, const Weight&) = default;

  [[nodiscard]] bool dominant() const { return l1 >= 0 && l2 >= 0; }
  [[nodiscard]] std::string to_string() const {
    return "(" + std::to_string(l1) + "," + std::to_string(l2) + ")";
  }
};

/// Simple root alpha_i in fundamental-weight coordinates (columns of the Cartan matrix).
inline Weight simple_root(int i) { return i == 1 ? Weight{2, -1} : Weight{-1, 2}; }

enum class GenKind { E, F };

struct Gen {
  GenKind kind = GenKind::E;
  int index = 1;  // 1 or 2

  friend auto operator<=>(const Gen&, const Gen&) = default;

  /// Weight shift of the divided power gen^(a).
  [[nodiscard]] Weight shift(int a) const {
    return kind == GenKind::E ? a * simple_root(index) : -(a * simple_root(index));
  }
  /// 0..3 for E1, E2, F1, F2; used to index per-generator tables.
  [[nodiscard]] int slot() const { return (kind == GenKind::E ? 0 : 2) + (index - 1); }
  [[nodiscard]] std::string to_string() const { return std::string(kind == GenKind::E ? "e" : "f") + std::to_string(index); }
};

inline constexpr Gen E1{GenKind::E, 1};
inline constexpr Gen E2{GenKind::E, 2};
inline constexpr Gen F1{GenKind::F, 1};
inline constexpr Gen F2{GenKind::F, 2};
inline constexpr Gen kAllGens[4] = {E1, E2, F1, F2};

enum class Shape { S212, S121 };

/// theta_2^(x) theta_1^(y) theta_2^(z) (S212) or theta_1^(x) theta_2^(y) theta_1^(z) (S121).
struct MonomialLabel {
  Shape shape = Shape::S212;
  int x = 0, y = 0, z = 0;

  friend auto operator<=>(const MonomialLabel&, const MonomialLabel&) = default;

  [[nodiscard]] int tr() const { return x + y + z; }
  /// Multiplicities (nu_1, nu_2) of theta_1 and theta_2.
  [[nodiscard]] std::pair<int, int> nu() const {
    return shape == Shape::S212 ? std::pair{y, x + z} : std::pair{x + z, y};
  }
  [[nodiscard]] Weight root_content() const {
    auto [a, b] = nu();
    return a * simple_root(1) + b * simple_root(2);
  }
  [[nodiscard]] bool dominant() const { return y >= x + z && x >= 0 && z >= 0; }

  /// The boundary case y = x+z of S121 is the same element as an S212 monomial.
  [[nodiscard]] MonomialLabel normalized() const {
    if (shape == Shape::S121 && y == x + z) return {Shape::S212, z, y, x};
    return *this;
  }

  /// (index, exponent) in written order, zero exponents dropped.
  [[nodiscard]] std::vector<std::pair<int, int>> word() const {
    const int outer = shape == Shape::S212 ? 2 : 1, inner = 3 - outer;
    std::vector<std::pair<int, int>> w;
    if (x) w.emplace_back(outer, x);
    if (y) w.emplace_back(inner, y);
    if (z) w.emplace_back(outer, z);
    return w;
  }

  [[nodiscard]] MonomialLabel index_swapped() const {
    return MonomialLabel{shape == Shape::S212 ? Shape::S121 : Shape::S212, x, y, z}.normalized();
  }

  [[nodiscard]] std::string to_string() const {
    const char* a = shape == Shape::S212 ? "2" : "1";
    const char* b = shape == Shape::S212 ? "1" : "2";
    return std::string("t") + a + "^" + std::to_string(x) + " t" + b + "^" + std::to_string(y) + " t" + a + "^" +
           std::to_string(z);
  }
};

/// Deterministic basis order: total degree, then S212 before S121, then exponents.
inline bool label_less(const MonomialLabel& p, const MonomialLabel& q) {
  if (p.tr() != q.tr()) return p.tr() < q.tr();
  return p < q;
}

/// Membership in B(l1 w1 + l2 w2) per the explicit inequalities.
inline bool in_B(const MonomialLabel& label, Weight lambda) {
  const MonomialLabel b = label.normalized();
  if (!b.dominant()) return false;
  const int a = lambda.l1, bb = lambda.l2;
  if (b.shape == Shape::S212) {
    const auto [u, v, w] = std::tuple{b.x, b.y, b.z};
    return 0 <= w && w <= bb && 0 <= u && u <= a && u + w <= v && v <= a + w;
  }
  const auto [s, t, r] = std::tuple{b.x, b.y, b.z};
  return bb > 0 && 0 <= s && s <= bb - 1 && 0 <= r && r <= a && s + 1 + r <= t && t <= bb + r;
}

/// B(lambda) in basis order.
inline std::vector<MonomialLabel> enumerate_B(Weight lambda) {
  if (!lambda.dominant()) throw DomainError("enumerate_B: weight " + lambda.to_string() + " is not dominant");
  const int a = lambda.l1, b = lambda.l2;
  std::vector<MonomialLabel> out;
  for (int w = 0; w <= b; ++w)
    for (int u = 0; u <= a; ++u)
      for (int v = u + w; v <= a + w; ++v) out.push_back({Shape::S212, u, v, w});
  if (b > 0)
    for (int s = 0; s <= b - 1; ++s)
      for (int r = 0; r <= a; ++r)
        for (int t = s + 1 + r; t <= b + r; ++t) out.push_back({Shape::S121, s, t, r});
  std::sort(out.begin(), out.end(), label_less);
  return out;
}

}  // namespace qcanon
