#pragma once

// Explicit realizations of V(a w1 + b w2) and V(-s w1 - t w2) with exact
// structure matrices in the theta-monomial bases.

#include "qcanon/matrix.hpp"
#include "qcanon/qcomb.hpp"
#include "qcanon/weight.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace qcanon {

/// Square matrix over Z[v,v^-1] stored by columns; entries are nonzero.
struct SparseMatrix {
  using Column = std::vector<std::pair<uint32_t, LaurentPoly>>;

  size_t n = 0;
  std::vector<Column> cols;

  SparseMatrix() = default;
  explicit SparseMatrix(size_t dim) : n(dim), cols(dim) {}

  static SparseMatrix identity(size_t dim) {
    SparseMatrix m(dim);
    for (size_t j = 0; j < dim; ++j) m.cols[j].emplace_back(static_cast<uint32_t>(j), LaurentPoly(1));
    return m;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : cols)
      if (!c.empty()) return false;
    return true;
  }

  [[nodiscard]] LaurentPoly at(size_t i, size_t j) const {
    for (const auto& [r, x] : cols[j])
      if (r == i) return x;
    return {};
  }

  [[nodiscard]] std::vector<LaurentPoly> apply(const std::vector<LaurentPoly>& x) const {
    std::vector<LaurentPoly> y(n);
    for (size_t j = 0; j < n; ++j) {
      if (x[j].is_zero()) continue;
      for (const auto& [r, c] : cols[j]) y[r] += c * x[j];
    }
    return y;
  }

  /// this * o
  [[nodiscard]] SparseMatrix times(const SparseMatrix& o) const {
    SparseMatrix out(n);
    for (size_t j = 0; j < n; ++j) {
      std::map<uint32_t, LaurentPoly> acc;
      for (const auto& [k, c] : o.cols[j])
        for (const auto& [r, x] : cols[k]) acc[r] += x * c;
      for (auto& [r, x] : acc)
        if (!x.is_zero()) out.cols[j].emplace_back(r, std::move(x));
    }
    return out;
  }

  [[nodiscard]] std::vector<std::vector<LaurentPoly>> dense() const {
    std::vector<std::vector<LaurentPoly>> d(n, std::vector<LaurentPoly>(n));
    for (size_t j = 0; j < n; ++j)
      for (const auto& [r, x] : cols[j]) d[r][j] = x;
    return d;
  }
};

enum class ModuleKind { Highest, Lowest };

/// An immutable module with basis b^- eta (highest) or b^+ xi (lowest), b in B.
class ModuleRealization {
public:
  ModuleRealization(ModuleKind kind, Weight params, std::vector<MonomialLabel> basis, std::vector<Weight> weights,
                    std::array<SparseMatrix, 4> gens)
      : kind_(kind), params_(params), basis_(std::move(basis)), weights_(std::move(weights)), gens_(std::move(gens)) {
    for (size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  [[nodiscard]] ModuleKind kind() const { return kind_; }
  /// (a,b) for V(a w1 + b w2), (s,t) for V(-s w1 - t w2).
  [[nodiscard]] Weight params() const { return params_; }
  [[nodiscard]] Weight extremal_weight() const { return kind_ == ModuleKind::Highest ? params_ : -params_; }
  [[nodiscard]] size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<MonomialLabel>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<Weight>& weights() const { return weights_; }
  [[nodiscard]] const SparseMatrix& gen(Gen g) const { return gens_[static_cast<size_t>(g.slot())]; }

  [[nodiscard]] std::optional<size_t> index_of(const MonomialLabel& b) const {
    auto it = index_.find(b.normalized());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// gen^a / [a]!, memoized. The reference stays valid for the module's lifetime.
  const SparseMatrix& divided(Gen g, int a) const {
    if (a < 0) throw DomainError("divided power with negative exponent");
    std::lock_guard<std::mutex> lock(mu_);
    auto& tab = divided_[static_cast<size_t>(g.slot())];
    if (tab.empty()) tab.push_back(std::make_unique<SparseMatrix>(SparseMatrix::identity(dim())));
    while (static_cast<int>(tab.size()) <= a) {
      const int r = static_cast<int>(tab.size());
      SparseMatrix next = tab.back()->times(gen(g));
      const LaurentPoly qr = qint(r);
      for (auto& col : next.cols)
        for (auto& entry : col) entry.second = entry.second.exact_div(qr);
      tab.push_back(std::make_unique<SparseMatrix>(std::move(next)));
    }
    return *tab[static_cast<size_t>(a)];
  }

private:
  ModuleKind kind_;
  Weight params_;
  std::vector<MonomialLabel> basis_;
  std::vector<Weight> weights_;
  std::array<SparseMatrix, 4> gens_;
  std::map<MonomialLabel, size_t> index_;
  mutable std::mutex mu_;
  mutable std::array<std::vector<std::unique_ptr<SparseMatrix>>, 4> divided_;
};

using ModulePtr = std::shared_ptr<const ModuleRealization>;

/// gen^(a) applied to a coordinate vector.
inline std::vector<LaurentPoly> act_divided(const ModuleRealization& mod, Gen g, int a,
                                            const std::vector<LaurentPoly>& vec) {
  if (vec.size() != mod.dim()) throw DomainError("act_divided: dimension mismatch");
  return mod.divided(g, a).apply(vec);
}

namespace detail {

// V(w1)^{(x) a} (x) V(w2)^{(x) b} with the iterated coproduct; states are base-3 digit strings.
class Ambient {
public:
  Ambient(int a, int b) : nfac_(a + b), a_(a) {
    dim_ = 1;
    for (int r = 0; r < nfac_; ++r) dim_ *= 3;
    weight_.resize(dim_);
    for (size_t st = 0; st < dim_; ++st) {
      Weight w;
      for (int r = 0; r < nfac_; ++r) w = w + local_weight(r, digit(st, r));
      weight_[st] = w;
    }
  }

  [[nodiscard]] size_t dim() const { return dim_; }
  [[nodiscard]] Weight weight(size_t st) const { return weight_[st]; }

  [[nodiscard]] std::vector<LaurentPoly> apply(Gen g, const std::vector<LaurentPoly>& x) const {
    std::vector<LaurentPoly> y(dim_);
    for (size_t st = 0; st < dim_; ++st) {
      if (x[st].is_zero()) continue;
      for (int r = 0; r < nfac_; ++r) {
        const int d = digit(st, r);
        const int nd = local_target(r, g, d);
        if (nd < 0) continue;
        int e = 0;
        if (g.kind == GenKind::E) {
          for (int q = 0; q < r; ++q) e += local_weight(q, digit(st, q)).pair(g.index);
        } else {
          for (int q = r + 1; q < nfac_; ++q) e -= local_weight(q, digit(st, q)).pair(g.index);
        }
        const size_t nst = st + static_cast<size_t>(nd - d) * pow3(r);
        y[nst] += x[st].shifted(e);
      }
    }
    return y;
  }

  [[nodiscard]] std::vector<LaurentPoly> apply_divided(Gen g, int a, std::vector<LaurentPoly> x) const {
    for (int i = 0; i < a; ++i) x = apply(g, x);
    if (a > 1) {
      const LaurentPoly f = qfact(a);
      for (auto& c : x) c = c.exact_div(f);
    }
    return x;
  }

private:
  [[nodiscard]] static size_t pow3(int r) {
    size_t p = 1;
    for (int i = 0; i < r; ++i) p *= 3;
    return p;
  }
  [[nodiscard]] static int digit(size_t st, int r) { return static_cast<int>((st / pow3(r)) % 3); }

  // Factor r < a is V(w1), otherwise V(w2), which is V(w1) with indices 1 and 2 exchanged.
  [[nodiscard]] bool swapped(int r) const { return r >= a_; }

  [[nodiscard]] Weight local_weight(int r, int d) const {
    static constexpr Weight w1[3] = {{1, 0}, {-1, 1}, {0, -1}};
    const Weight w = w1[d];
    return swapped(r) ? Weight{w.l2, w.l1} : w;
  }

  // f1 x1 = x2, f2 x2 = x3, e1 x2 = x1, e2 x3 = x2 on V(w1).
  [[nodiscard]] int local_target(int r, Gen g, int d) const {
    const int i = swapped(r) ? 3 - g.index : g.index;
    if (g.kind == GenKind::F) return d == i - 1 ? d + 1 : -1;
    return d == i ? d - 1 : -1;
  }

  int nfac_;
  int a_;
  size_t dim_;
  std::vector<Weight> weight_;
};

inline ModulePtr realize_highest(int a, int b) {
  const Ambient amb(a, b);
  const Weight lambda{a, b};
  std::vector<MonomialLabel> basis = enumerate_B(lambda);
  const size_t n = basis.size();

  std::vector<std::vector<LaurentPoly>> vecs;
  std::vector<Weight> weights;
  vecs.reserve(n);
  for (const auto& lab : basis) {
    std::vector<LaurentPoly> x(amb.dim());
    x[0] = LaurentPoly(1);
    auto w = lab.word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = amb.apply_divided(Gen{GenKind::F, it->first}, it->second, x);
    weights.push_back(lambda - lab.root_content());
    vecs.push_back(std::move(x));
  }

  // Per weight: ambient states of that weight and the basis vectors living there.
  std::map<Weight, std::vector<size_t>> states, members;
  for (size_t st = 0; st < amb.dim(); ++st) states[amb.weight(st)].push_back(st);
  for (size_t j = 0; j < n; ++j) {
    for (size_t st = 0; st < amb.dim(); ++st)
      if (!vecs[j][st].is_zero() && amb.weight(st) != weights[j])
        throw RealizationError("basis vector " + basis[j].to_string() + " is not a weight vector");
    members[weights[j]].push_back(j);
  }

  auto coords = [&](Weight w, const std::vector<std::vector<LaurentPoly>>& rhs) {
    const auto& rows = states[w];
    const auto& cols = members[w];
    ExactMatrix m(rows.size(), cols.size()), r(rows.size(), rhs.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t j = 0; j < cols.size(); ++j) m(i, j) = RatFunc(vecs[cols[j]][rows[i]]);
      for (size_t k = 0; k < rhs.size(); ++k) r(i, k) = RatFunc(rhs[k][rows[i]]);
    }
    MultiSolveResult s;
    try {
      s = solve_exact(m, r);
    } catch (const Inconsistent&) {
      throw RealizationError("generator image leaves the cyclic submodule at weight " + w.to_string());
    }
    if (s.rank != cols.size())
      throw RealizationError("candidate basis is linearly dependent at weight " + w.to_string());
    return s.x;
  };

  for (auto& [w, cols] : members) coords(w, {});

  std::array<SparseMatrix, 4> gens{SparseMatrix(n), SparseMatrix(n), SparseMatrix(n), SparseMatrix(n)};
  for (Gen g : kAllGens) {
    std::map<Weight, std::vector<std::pair<size_t, std::vector<LaurentPoly>>>> images;
    for (size_t j = 0; j < n; ++j) {
      auto y = amb.apply(g, vecs[j]);
      bool nz = false;
      for (const auto& c : y) nz = nz || !c.is_zero();
      if (nz) images[weights[j] + g.shift(1)].emplace_back(j, std::move(y));
    }
    for (auto& [w, list] : images) {
      if (!members.count(w)) throw RealizationError("generator image at weight " + w.to_string() + " outside V");
      std::vector<std::vector<LaurentPoly>> rhs;
      for (auto& p : list) rhs.push_back(p.second);
      ExactMatrix x = coords(w, rhs);
      const auto& cols = members[w];
      for (size_t k = 0; k < list.size(); ++k)
        for (size_t i = 0; i < cols.size(); ++i) {
          if (x(i, k).is_zero()) continue;
          if (!x(i, k).is_laurent())
            throw RealizationError("non-integral structure constant " + x(i, k).to_string());
          gens[static_cast<size_t>(g.slot())].cols[list[k].first].emplace_back(static_cast<uint32_t>(cols[i]),
                                                                                x(i, k).to_laurent());
        }
    }
    for (auto& col : gens[static_cast<size_t>(g.slot())].cols)
      std::sort(col.begin(), col.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  }
  return std::make_shared<ModuleRealization>(ModuleKind::Highest, lambda, std::move(basis), std::move(weights),
                                             std::move(gens));
}

template <class Builder>
ModulePtr memoized_module(ModuleKind kind, int a, int b, Builder build) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, ModulePtr> memo;
  const auto key = std::tuple{static_cast<int>(kind), a, b};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  ModulePtr m = build();
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, m).first->second;
}

}  // namespace detail

/// V(a w1 + b w2), cut out of V(w1)^{(x)a} (x) V(w2)^{(x)b} as the submodule generated by the top vector.
inline ModulePtr build_highest_module(int a, int b) {
  if (a < 0 || b < 0) throw DomainError("build_highest_module: negative parameter");
  return detail::memoized_module(ModuleKind::Highest, a, b, [&] { return detail::realize_highest(a, b); });
}

/// V(-s w1 - t w2) as the twist of V(s w1 + t w2) by e_i <-> f_i, k_i <-> k_i^-1.
/// Under the twist b^- eta becomes b^+ xi, so the label set is B(s w1 + t w2).
inline ModulePtr build_lowest_module(int s, int t) {
  if (s < 0 || t < 0) throw DomainError("build_lowest_module: negative parameter");
  return detail::memoized_module(ModuleKind::Lowest, s, t, [&] {
    ModulePtr h = build_highest_module(s, t);
    std::vector<Weight> w;
    for (const auto& x : h->weights()) w.push_back(-x);
    std::array<SparseMatrix, 4> gens{h->gen(F1), h->gen(F2), h->gen(E1), h->gen(E2)};
    return std::make_shared<ModuleRealization>(ModuleKind::Lowest, Weight{s, t}, h->basis(), std::move(w),
                                               std::move(gens));
  });
}

}  // namespace qcanon
