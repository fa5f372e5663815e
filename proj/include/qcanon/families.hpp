#pragma once

// The explicit canonical-basis elements of U-dot for sl3: thirteen families
// e2 e1 e2 1 f2 f1 f2 / e2 e1 e2 1 f1 f2 f1, their sigma images and their index-swap mirrors.

#include "qcanon/qcomb.hpp"
#include "qcanon/udot.hpp"

namespace qcanon {

/// n in 1..13; primed = sigma image; mirror = indices 1 and 2 swapped.
struct FamilyId {
  int n = 1;
  bool primed = false;
  bool mirror = false;

  friend auto operator<=>(const FamilyId&, const FamilyId&) = default;

  [[nodiscard]] std::string to_string() const {
    return (mirror ? "m" : "") + std::to_string(n) + (primed ? "'" : "");
  }

  /// "6", "6'", "m6", "m6'"; surrounding parentheses are accepted.
  static FamilyId parse(std::string_view text) {
    std::string s(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    FamilyId id;
    if (!s.empty() && s.front() == 'm') {
      id.mirror = true;
      s.erase(0, 1);
    }
    if (!s.empty() && s.back() == '\'') {
      id.primed = true;
      s.pop_back();
    }
    if (s.empty() || s.size() > 2 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad family id: " + std::string(text));
    id.n = std::stoi(s);
    if (id.n < 1 || id.n > 13) throw ParseError("family index out of range: " + std::string(text));
    return id;
  }
};

inline std::vector<FamilyId> all_families() {
  std::vector<FamilyId> out;
  for (bool mirror : {false, true})
    for (bool primed : {false, true})
      for (int n = 1; n <= 13; ++n) out.push_back({n, primed, mirror});
  return out;
}

struct FamilyParams {
  int h = 0, k = 0, j = 0, l = 0, m = 0, u = 0, v = 0, w = 0;
  friend auto operator<=>(const FamilyParams&, const FamilyParams&) = default;
  [[nodiscard]] std::string to_string() const {
    std::ostringstream o;
    o << "h,k,j=" << h << "," << k << "," << j << " (l,m)=(" << l << "," << m << ") u,v,w=" << u << "," << v << ","
      << w;
    return o.str();
  }
};

/// Negative control: replaces the q-binomial in printed position `slot` (0-based)
/// by the one whose top argument is shifted by `top_shift`.
struct Mutation {
  int slot = 0;
  int top_shift = 1;
};

struct FamilyElement {
  UdotExpr expr;
  bool admissible = false;
  MonomialLabel e_label;  // acts on xi
  MonomialLabel f_label;  // acts on eta
  /// (a,b) - (s,t) for the tensor spaces where the element can be nonzero.
  Weight zeta;
};

namespace detail {

class TermSink {
public:
  TermSink(const std::optional<Mutation>& mut, bool f121) : mut_(mut), f121_(f121) {}

  LaurentPoly bin(int slot, int top, int bottom) const {
    if (mut_ && mut_->slot == slot) top += mut_->top_shift;
    return qbinom(top, bottom);
  }

  void add(int sign_exp, const LaurentPoly& c, std::array<int, 3> e, Weight idem, std::array<int, 3> f) {
    for (int x : e)
      if (x < 0) throw IntegrityError("family term with negative e exponent");
    for (int x : f)
      if (x < 0) throw IntegrityError("family term with negative f exponent");
    const int o = f121_ ? 1 : 2, i = 3 - o;
    UdotWord w = UdotWord::make({{E2, e[0]}, {E1, e[1]}, {E2, e[2]}}, idem,
                                {{Gen{GenKind::F, o}, f[0]}, {Gen{GenKind::F, i}, f[1]}, {Gen{GenKind::F, o}, f[2]}});
    expr.add(w, sign_exp % 2 == 0 ? c : -c);
  }

  UdotExpr expr;

private:
  const std::optional<Mutation>& mut_;
  bool f121_;
};

inline bool family_admissible(int n, const FamilyParams& P) {
  const auto [h, k, j, l, m, u, v, w] = P;
  if (k < h + j || v < u + w) return false;
  const int A = j + h - k;  // <= 0
  const int B = u + w - v;  // <= 0
  switch (n) {
    case 1: return -l >= v + k - j - u && -m >= u + j;
    case 2: return -l >= v - u + k - j && u + j + B <= -m && -m <= u + j && -m >= u + j + A;
    case 3: return -l >= v - u + k - j && -m >= u + j + B && -m <= u + j + A;
    case 4: return -l >= v - u + k - j && -m <= u + j + B && -m >= u + j + A;
    case 5: return -l >= v - u + k - j && -m <= u + j + B && u + j + A + B <= -m && -m <= u + j + A;
    case 6: return -m <= u + j + A + B && -l - m >= j + h + u + w;
    case 7: return -l >= v - u + k - j && -l - m <= j + h + u + w;
    case 8: return -l >= u + k - j && -m >= j + v - u;
    case 9: return -l >= u + k - j && v + j - u + A <= -m && -m <= v + j - u;
    case 10: return u + k - j + B <= -l && -l <= u + k - j && -m >= v + j - u;
    case 11: return u + k - j + B <= -l && -l <= u + k - j && v + j - u + A <= -m && -m <= v + j - u;
    case 12: return -l - m >= u + w + k && -l <= u + k - j + B;
    case 13: return -l - m <= u + w + k && -m >= v - u + j;
    default: throw DomainError("family index out of range");
  }
}

// The first thirteen families exactly as displayed.
inline UdotExpr family_sum(int n, const FamilyParams& P, const std::optional<Mutation>& mut) {
  const auto [h, k, j, l, m, u, v, w] = P;
  TermSink out(mut, n >= 8);
  const int A = j + h - k, B = u + w - v;
  switch (n) {
    case 1:
      out.add(0, 1, {h, k, j}, {l, m}, {u, v, w});
      break;
    case 2:
      for (int p = 0; p <= std::min(j, u); ++p)
        out.add(p, out.bin(0, m + u + j + p - 1, p), {h, k, j - p}, {l - p, m + 2 * p}, {u - p, v, w});
      break;
    case 3:
      for (int p = 0; p <= j; ++p)
        for (int q = 0; q <= h && p + q <= u; ++q)
          out.add(p + q, out.bin(0, m + u + j + q + p - 1, p) * out.bin(1, m + u + j + A + q - 1, q), {h - q, k, j - p},
                  {l - p - q, m + 2 * p + 2 * q}, {u - p - q, v, w});
      break;
    case 4:
      for (int p = 0; p <= u; ++p)
        for (int q = 0; q <= w && p + q <= j; ++q)
          out.add(p + q, out.bin(0, u + j + m + q + p - 1, p) * out.bin(1, u + j + m + B + q - 1, q),
                  {h, k, j - p - q}, {l - p - q, m + 2 * p + 2 * q}, {u - p, v, w - q});
      break;
    case 5:
      for (int p = 0; p <= j; ++p)
        for (int q = 0; q <= w && p + q <= j; ++q)
          for (int r = 0; r <= h && p + r <= u; ++r)
            out.add(p + q + r,
                    out.bin(0, u + j + m + r + q + p - 1, p) * out.bin(1, u + j + m + B + q - 1, q) *
                        out.bin(2, m + u + j + A + r - 1, r),
                    {h - r, k, j - p - q}, {l - p - q - r, m + 2 * (p + q + r)}, {u - p - r, v, w - q});
      break;
    case 6:
    case 7:
      for (int z = 0; z <= (n == 7 ? std::min(k, v) : 0); ++z)
        for (int p = 0; p <= j; ++p)
          for (int q = 0; p + q <= j; ++q)
            for (int r = 0; r <= h && p + r <= u; ++r)
              for (int i = 0; r + i + z <= h && q + i + z <= w; ++i) {
                LaurentPoly c = out.bin(0, u + j + m + r + 2 * i + q + z + p - 1, p) *
                                out.bin(1, u + j + m + B + z + i + q - 1, q) * out.bin(2, m + u + j + A + z + i + r - 1, r) *
                                out.bin(3, m + u + j + A + B + z + i - 1, i);
                if (n == 7) c *= out.bin(4, l + m + j + h + u + w + z - 1, z);
                out.add(p + q + r + i + z, c, {h - r - i - z, k - z, j - p - q},
                        {l - p - q - r - i + z, m + 2 * (p + q + r + i) + z}, {u - p - r, v - z, w - q - i - z});
              }
      break;
    case 8:
      out.add(0, 1, {h, k, j}, {l, m}, {u, v, w});
      break;
    case 9:
      for (int p = 0; p <= std::min(j, v); ++p)
        out.add(p, out.bin(0, m + j + v - u + p - 1, p), {h, k, j - p}, {l - p, m + 2 * p}, {u, v - p, w});
      break;
    case 10:
      for (int p = 0; p <= std::min(k, u); ++p)
        out.add(p, out.bin(0, l + u + k - j + p - 1, p), {h, k - p, j}, {l + 2 * p, m - p}, {u - p, v, w});
      break;
    case 11:
      for (int p = 0; p <= std::min(j, v); ++p)
        for (int q = 0; q <= std::min(k, u); ++q)
          out.add(p + q, out.bin(0, m + j + v - u + p - 1, p) * out.bin(1, l + u + k - j + q - 1, q), {h, k - q, j - p},
                  {l - p + 2 * q, m + 2 * p - q}, {u - q, v - p, w});
      break;
    case 12:
      for (int p = 0; p <= u; ++p)
        for (int q = 0; q <= w && p + q <= k; ++q)
          out.add(p + q, out.bin(0, u + l + k - j + q + p - 1, p) * out.bin(1, u + l + k - j + B + q - 1, q),
                  {h, k - p - q, j}, {l + 2 * p + 2 * q, m - p - q}, {u - p, v, w - q});
      break;
    case 13:
      for (int r = 0; r <= std::min(j, v); ++r)
        for (int p = 0; p <= u; ++p)
          for (int q = 0; q + r <= w && p + q + r <= k; ++q)
            out.add(p + q + r,
                    out.bin(0, u + l + k - j + r + q + p - 1, p) * out.bin(1, u + l + k - j + B + r + q - 1, q) *
                        out.bin(2, u + w + l + m + k + r - 1, r),
                    {h, k - p - q - r, j - r}, {l + 2 * p + 2 * q + r, m - p - q + r}, {u - p, v - r, w - q - r});
      break;
    default:
      throw DomainError("family index out of range");
  }
  return std::move(out.expr);
}

inline MonomialLabel reversed(const MonomialLabel& b) { return {b.shape, b.z, b.y, b.x}; }

}  // namespace detail

/// Builds the element, its admissibility and the label pair of its leading term.
/// Primed families are sigma images: (n')(h,k,j,l,m,u,v,w) = sigma((n)(j,k,h,-l,-m,w,v,u)).
inline FamilyElement family_element(FamilyId id, const FamilyParams& P, std::optional<Mutation> mut = std::nullopt) {
  for (int x : {P.h, P.k, P.j, P.u, P.v, P.w})
    if (x < 0) throw DomainError("family_element: negative exponent in " + P.to_string());
  if (id.n < 1 || id.n > 13) throw DomainError("family_element: bad id " + id.to_string());
  FamilyElement out;
  const Shape fshape = id.n >= 8 ? Shape::S121 : Shape::S212;
  if (!id.primed) {
    out.expr = detail::family_sum(id.n, P, mut);
    out.admissible = detail::family_admissible(id.n, P);
    out.e_label = {Shape::S212, P.h, P.k, P.j};
    out.f_label = {fshape, P.u, P.v, P.w};
  } else {
    const FamilyParams Q{P.j, P.k, P.h, -P.l, -P.m, P.w, P.v, P.u};
    out.expr = sigma(detail::family_sum(id.n, Q, mut));
    out.admissible = detail::family_admissible(id.n, Q);
    out.e_label = detail::reversed({Shape::S212, Q.h, Q.k, Q.j});
    out.f_label = detail::reversed({fshape, Q.u, Q.v, Q.w});
  }
  if (id.mirror) {
    out.expr = index_swap(out.expr);
    out.e_label = out.e_label.index_swapped();
    out.f_label = out.f_label.index_swapped();
  }
  out.e_label = out.e_label.normalized();
  out.f_label = out.f_label.normalized();
  auto z = out.expr.source_weight();
  if (!z) throw IntegrityError("family " + id.to_string() + " mixes source weights at " + P.to_string());
  out.zeta = *z;
  return out;
}

/// The displayed forms of (1') and (2'), transcribed independently of sigma; used as a cross-check.
inline FamilyElement printed_primed_family(int n, const FamilyParams& P) {
  const auto [h, k, j, l, m, u, v, w] = P;
  FamilyElement out;
  auto word = [&](int hh, int jj, Weight idem, int uu, int ww) {
    return UdotWord::make({{F2, uu}, {F1, v}, {F2, ww}}, idem, {{E2, hh}, {E1, k}, {E2, jj}});
  };
  const bool base = k >= h + j && v >= u + w;
  if (n == 1) {
    out.expr.add(word(h, j, {l, m}, u, w), 1);
    out.admissible = base && -l <= w - v + h - k && -m <= -w - h;
  } else if (n == 2) {
    for (int p = 0; p <= std::min(h, w); ++p)
      out.expr.add(word(h - p, j, {l + p, m - 2 * p}, u, w - p), (p % 2 ? -1 : 1) * qbinom(w - m + h + p - 1, p));
    out.admissible =
        base && -l <= w - v + h - k && -w - h <= -m && -m <= -w - h + v - u - w && -m <= -w - h + (k - j - h);
  } else {
    throw DomainError("printed_primed_family: only (1') and (2') are transcribed");
  }
  out.e_label = MonomialLabel{Shape::S212, h, k, j}.normalized();
  out.f_label = MonomialLabel{Shape::S212, u, v, w}.normalized();
  out.zeta = out.expr.source_weight().value_or(Weight{});
  return out;
}

}  // namespace qcanon
