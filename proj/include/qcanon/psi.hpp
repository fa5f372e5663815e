#pragma once

// The bar-semilinear involution Psi on T, fixed by Psi(xi(x)eta) = xi(x)eta and
// Psi(u x) = bar(u) Psi(x).

#include "qcanon/json_io.hpp"
#include "qcanon/matrix.hpp"
#include "qcanon/tensor.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace qcanon {

using DenseMat = std::vector<std::vector<LaurentPoly>>;

/// rho per weight space: column c is Psi of the c-th standard vector of the space.
class PsiOperator {
public:
  PsiOperator(TensorSpacePtr T, std::vector<DenseMat> rho) : T_(std::move(T)), rho_(std::move(rho)) {}

  [[nodiscard]] const TensorSpace& space() const { return *T_; }
  [[nodiscard]] const DenseMat& rho(size_t space_index) const { return rho_[space_index]; }
  [[nodiscard]] const std::vector<DenseMat>& all() const { return rho_; }

  /// rho * bar(x), weight space by weight space.
  [[nodiscard]] TensorVec apply(const TensorVec& x) const {
    TensorVec y;
    for (const auto& [p, c] : x) {
      const size_t si = T_->space_index(p), col = T_->position(p);
      const auto& pairs = T_->weight_spaces()[si].pairs;
      const DenseMat& r = rho_[si];
      const LaurentPoly cb = c.bar();
      for (size_t row = 0; row <= col; ++row)
        if (!r[row][col].is_zero()) add_scaled(y, pairs[row], r[row][col] * cb);
    }
    return y;
  }

private:
  TensorSpacePtr T_;
  std::vector<DenseMat> rho_;
};

using PsiPtr = std::shared_ptr<const PsiOperator>;

inline TensorVec psi_apply(const PsiOperator& P, const TensorVec& x) { return P.apply(x); }

namespace detail {

inline DenseMat square(size_t k) { return DenseMat(k, std::vector<LaurentPoly>(k)); }

inline DenseMat bar(const DenseMat& m) {
  DenseMat r = m;
  for (auto& row : r)
    for (auto& x : row) x = x.bar();
  return r;
}

inline DenseMat mul(const DenseMat& a, const DenseMat& b) {
  const size_t k = a.size();
  DenseMat c = square(k);
  for (size_t i = 0; i < k; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < k; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

// Upper unitriangular inverse by back substitution; no division needed.
inline DenseMat unitriangular_inverse(const DenseMat& m) {
  const size_t k = m.size();
  DenseMat n = square(k);
  for (size_t c = 0; c < k; ++c) {
    n[c][c] = LaurentPoly(1);
    for (size_t r = c; r-- > 0;) {
      LaurentPoly acc;
      for (size_t l = r + 1; l <= c; ++l)
        if (!m[r][l].is_zero() && !n[l][c].is_zero()) acc += m[r][l] * n[l][c];
      n[r][c] = -acc;
    }
  }
  return n;
}

/// Diagonal 1, support only below in the pair order, bar(rho) rho = I.
inline void check_rho(const TensorSpace& T, const WeightSpace& ws, const DenseMat& rho) {
  const size_t k = ws.pairs.size();
  for (size_t r = 0; r < k; ++r)
    for (size_t c = 0; c < k; ++c) {
      const bool allowed = pair_order_leq(T, ws.pairs[r], ws.pairs[c]);
      if (r == c && !rho[r][c].is_one())
        throw IntegrityError("Psi: diagonal entry is not 1 in weight space " + ws.weight.to_string());
      if (!allowed && !rho[r][c].is_zero())
        throw IntegrityError("Psi: not unitriangular in weight space " + ws.weight.to_string());
    }
  DenseMat id = mul(bar(rho), rho);
  for (size_t r = 0; r < k; ++r)
    for (size_t c = 0; c < k; ++c)
      if (id[r][c] != LaurentPoly(r == c ? 1 : 0))
        throw IntegrityError("Psi: bar(rho) rho != I in weight space " + ws.weight.to_string());
}

/// e-word of the low label applied to xi (x) b'^- eta. Since f's kill xi, xi (x) b'^- eta = b'^-(xi (x) eta),
/// so these vectors are Psi-fixed; they are unitriangular over the standard basis.
inline TensorVec fixed_vector(const TensorSpace& T, size_t p) {
  TensorVec x = T.standard(T.pair_index(0, T.high_of(p)));
  const auto word = T.low().basis()[T.low_of(p)].word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = delta_act(T, Gen{GenKind::E, it->first}, it->second, x);
  return x;
}

}  // namespace detail

/// Psi from the Psi-fixed vectors M_p = b1^+ (xi (x) b1'^- eta): rho = M bar(M^-1).
inline PsiOperator build_psi(TensorSpacePtr T) {
  std::vector<DenseMat> rhos;
  for (const auto& ws : T->weight_spaces()) {
    const size_t k = ws.pairs.size();
    DenseMat M = detail::square(k);
    for (size_t c = 0; c < k; ++c) {
      for (const auto& [q, x] : detail::fixed_vector(*T, ws.pairs[c])) {
        if (T->space_index(q) != T->space_index(ws.pairs[c])) throw IntegrityError("Psi: word left its weight space");
        M[T->position(q)][c] = x;
      }
      for (size_t r = 0; r < k; ++r)
        if ((r == c && !M[r][c].is_one()) || (r != c && !M[r][c].is_zero() && T->tr_low(ws.pairs[r]) >= T->tr_low(ws.pairs[c])))
          throw IntegrityError("Psi: fixed vectors are not unitriangular in weight space " + ws.weight.to_string());
    }
    DenseMat rho = detail::mul(M, detail::bar(detail::unitriangular_inverse(M)));
    detail::check_rho(*T, ws, rho);
    rhos.push_back(std::move(rho));
  }
  return PsiOperator(std::move(T), std::move(rhos));
}

/// Psi by spanning each weight space with divided-power words applied to xi (x) eta and solving.
/// Slow; kept as an independent construction for small parameters.
inline PsiOperator build_psi_by_span(TensorSpacePtr T, size_t word_budget = 20000, int max_exp = 2) {
  const auto& spaces = T->weight_spaces();
  std::vector<std::vector<TensorVec>> span(spaces.size());
  size_t missing = T->dim(), tried = 0;
  std::vector<TensorVec> queue{T->standard(T->top_pair())};
  span[T->space_index(T->top_pair())].push_back(queue[0]);
  --missing;
  auto to_matrix = [&](size_t si, const std::vector<TensorVec>& vs) {
    ExactMatrix m(spaces[si].pairs.size(), vs.size());
    for (size_t c = 0; c < vs.size(); ++c)
      for (const auto& [q, x] : vs[c]) m(T->position(q), c) = RatFunc(x);
    return m;
  };
  // Breadth first: exponent sum grows with queue depth.
  for (size_t head = 0; head < queue.size() && missing > 0; ++head)
    for (Gen g : kAllGens)
      for (int a = 1; a <= max_exp && missing > 0; ++a) {
        if (++tried > word_budget) throw SpanFailure("Psi: word budget exhausted with " + std::to_string(missing) + " directions missing");
        TensorVec y = delta_act(*T, g, a, queue[head]);
        if (y.empty()) continue;
        const size_t si = T->space_index(y.begin()->first);
        auto& vs = span[si];
        if (vs.size() == spaces[si].pairs.size()) continue;
        vs.push_back(y);
        if (exact_rank(to_matrix(si, vs)) < vs.size()) {
          vs.pop_back();
          continue;
        }
        --missing;
        queue.push_back(std::move(y));
      }
  if (missing > 0) throw SpanFailure("Psi: words do not span T");
  std::vector<DenseMat> rhos;
  for (size_t si = 0; si < spaces.size(); ++si) {
    const size_t k = spaces[si].pairs.size();
    const ExactMatrix W = to_matrix(si, span[si]);
    const ExactMatrix X = solve_exact(W, ExactMatrix::identity(k)).x;
    DenseMat rho = detail::square(k);
    for (size_t r = 0; r < k; ++r)
      for (size_t c = 0; c < k; ++c) {
        RatFunc acc(0);
        for (size_t l = 0; l < k; ++l) acc += W(r, l) * X(l, c).bar();
        if (!acc.is_laurent()) throw IntegralityFailure("Psi: entry " + acc.to_string() + " is not Laurent");
        rho[r][c] = acc.to_laurent();
      }
    detail::check_rho(*T, spaces[si], rho);
    rhos.push_back(std::move(rho));
  }
  return PsiOperator(std::move(T), std::move(rhos));
}

// ---- disk cache ----

inline constexpr const char* kPsiCacheVersion = "qcanon-psi-2";

inline Json psi_to_json(const PsiOperator& P) {
  const auto& T = P.space();
  Json spaces = Json::array();
  for (size_t si = 0; si < T.weight_spaces().size(); ++si) {
    const auto& ws = T.weight_spaces()[si];
    Json rho = Json::array();
    for (const auto& row : P.rho(si)) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(to_json(x));
      rho.push_back(std::move(r));
    }
    spaces.push_back(Json{{"weight", to_json(ws.weight)}, {"pairs", ws.pairs}, {"rho", std::move(rho)}});
  }
  const auto p = T.params();
  return Json{{"version", kPsiCacheVersion}, {"params", {p.s, p.t, p.a, p.b}}, {"spaces", std::move(spaces)}};
}

/// Parses and fully re-validates a cached operator; throws on any inconsistency.
inline PsiOperator psi_from_json(TensorSpacePtr T, const Json& j) {
  const auto p = T->params();
  if (j.at("version") != kPsiCacheVersion) throw ParseError("psi cache: version mismatch");
  if (j.at("params") != Json::array({p.s, p.t, p.a, p.b})) throw ParseError("psi cache: parameter mismatch");
  const auto& spaces = j.at("spaces");
  if (spaces.size() != T->weight_spaces().size()) throw ParseError("psi cache: weight space count");
  std::vector<DenseMat> rhos;
  for (size_t si = 0; si < spaces.size(); ++si) {
    const auto& ws = T->weight_spaces()[si];
    if (spaces[si].at("pairs").get<std::vector<size_t>>() != ws.pairs) throw ParseError("psi cache: pair layout");
    const auto& rj = spaces[si].at("rho");
    const size_t k = ws.pairs.size();
    if (rj.size() != k) throw ParseError("psi cache: matrix size");
    DenseMat rho = detail::square(k);
    for (size_t r = 0; r < k; ++r) {
      if (rj[r].size() != k) throw ParseError("psi cache: matrix size");
      for (size_t c = 0; c < k; ++c) rho[r][c] = laurent_from_json(rj[r][c]);
    }
    detail::check_rho(*T, ws, rho);
    rhos.push_back(std::move(rho));
  }
  return PsiOperator(std::move(T), std::move(rhos));
}

inline std::string default_cache_dir() {
  const char* d = std::getenv("QCANON_CACHE_DIR");
  return d ? d : "";
}

/// Why the last cache lookup rebuilt; empty if it was a hit or caching is off.
struct CacheEvent {
  bool corrupted = false;
  std::string detail;
};

/// Build Psi, going through the JSON cache in `cache_dir` when it is non-empty.
/// A corrupted entry is reported on stderr and replaced.
inline PsiOperator load_or_build_psi(TensorSpacePtr T, const std::string& cache_dir, CacheEvent* event = nullptr) {
  if (cache_dir.empty()) return build_psi(std::move(T));
  namespace fs = std::filesystem;
  const auto p = T->params();
  const fs::path file = fs::path(cache_dir) / ("psi_" + std::to_string(p.s) + "_" + std::to_string(p.t) + "_" +
                                               std::to_string(p.a) + "_" + std::to_string(p.b) + ".json");
  if (fs::exists(file)) {
    try {
      std::ifstream in(file);
      return psi_from_json(T, Json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << "qcanon: corrupted psi cache " << file << " (" << e.what() << "), rebuilding\n";
      if (event) *event = {true, e.what()};
    }
  }
  PsiOperator P = build_psi(T);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  const fs::path tmp = file.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    out << psi_to_json(P).dump();
  }
  fs::rename(tmp, file, ec);
  return P;
}

}  // namespace qcanon
