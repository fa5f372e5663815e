#pragma once

// T = V(-s w1 - t w2) (x) V(a w1 + b w2) in the standard basis b1^+ xi (x) b1'^- eta.

#include "qcanon/module.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

namespace qcanon {

/// Sparse vector of T keyed by pair index; zero coordinates are never stored.
using TensorVec = std::map<size_t, LaurentPoly>;

inline void add_scaled(TensorVec& y, size_t p, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = y.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) y.erase(it);
  }
}

/// y += c * x
inline void add_scaled(TensorVec& y, const TensorVec& x, const LaurentPoly& c) {
  if (c.is_zero()) return;
  for (const auto& [p, a] : x) add_scaled(y, p, a * c);
}

inline TensorVec bar(const TensorVec& x) {
  TensorVec y;
  for (const auto& [p, c] : x) y.emplace(p, c.bar());
  return y;
}

inline TensorVec scaled(const TensorVec& x, const LaurentPoly& c) {
  TensorVec y;
  add_scaled(y, x, c);
  return y;
}

inline TensorVec operator-(const TensorVec& x, const TensorVec& y) {
  TensorVec d = x;
  add_scaled(d, y, LaurentPoly(-1));
  return d;
}

struct TensorParams {
  int s = 0, t = 0, a = 0, b = 0;
  friend auto operator<=>(const TensorParams&, const TensorParams&) = default;
  [[nodiscard]] std::string to_string() const {
    return std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(a) + "," + std::to_string(b);
  }
};

/// Pairs of one weight, ordered by tr|b1| (which fixes tr|b1'| as well) and then by index.
struct WeightSpace {
  Weight weight;
  std::vector<size_t> pairs;
};

class TensorSpace {
public:
  explicit TensorSpace(TensorParams p)
      : params_(p), low_(build_lowest_module(p.s, p.t)), high_(build_highest_module(p.a, p.b)) {
    const size_t n = dim();
    std::map<Weight, std::vector<size_t>> by_weight;
    for (size_t q = 0; q < n; ++q) by_weight[weight(q)].push_back(q);
    pos_.resize(n);
    space_of_.resize(n);
    for (auto& [w, qs] : by_weight) {
      std::stable_sort(qs.begin(), qs.end(), [&](size_t x, size_t y) { return tr_low(x) < tr_low(y); });
      for (size_t k = 0; k < qs.size(); ++k) {
        pos_[qs[k]] = k;
        space_of_[qs[k]] = spaces_.size();
      }
      spaces_.push_back({w, std::move(qs)});
    }
  }

  [[nodiscard]] TensorParams params() const { return params_; }
  [[nodiscard]] const ModuleRealization& low() const { return *low_; }
  [[nodiscard]] const ModuleRealization& high() const { return *high_; }
  [[nodiscard]] size_t dim() const { return low_->dim() * high_->dim(); }

  [[nodiscard]] size_t pair_index(size_t i, size_t j) const { return i * high_->dim() + j; }
  [[nodiscard]] size_t low_of(size_t p) const { return p / high_->dim(); }
  [[nodiscard]] size_t high_of(size_t p) const { return p % high_->dim(); }
  [[nodiscard]] Weight weight(size_t p) const { return low_->weights()[low_of(p)] + high_->weights()[high_of(p)]; }
  [[nodiscard]] int tr_low(size_t p) const { return low_->basis()[low_of(p)].tr(); }
  [[nodiscard]] int tr_high(size_t p) const { return high_->basis()[high_of(p)].tr(); }
  [[nodiscard]] std::pair<MonomialLabel, MonomialLabel> labels(size_t p) const {
    return {low_->basis()[low_of(p)], high_->basis()[high_of(p)]};
  }
  [[nodiscard]] std::optional<size_t> index_of(const MonomialLabel& lo, const MonomialLabel& hi) const {
    auto i = low_->index_of(lo);
    auto j = high_->index_of(hi);
    if (!i || !j) return std::nullopt;
    return pair_index(*i, *j);
  }
  /// xi (x) eta
  [[nodiscard]] size_t top_pair() const { return 0; }
  [[nodiscard]] Weight top_weight() const { return high_->extremal_weight() + low_->extremal_weight(); }

  [[nodiscard]] const std::vector<WeightSpace>& weight_spaces() const { return spaces_; }
  [[nodiscard]] const WeightSpace& space_of(size_t p) const { return spaces_[space_of_[p]]; }
  [[nodiscard]] size_t space_index(size_t p) const { return space_of_[p]; }
  [[nodiscard]] size_t position(size_t p) const { return pos_[p]; }
  [[nodiscard]] const WeightSpace* find_space(Weight w) const {
    for (const auto& s : spaces_)
      if (s.weight == w) return &s;
    return nullptr;
  }

  [[nodiscard]] TensorVec standard(size_t p) const { return TensorVec{{p, LaurentPoly(1)}}; }

private:
  TensorParams params_;
  ModulePtr low_, high_;
  std::vector<WeightSpace> spaces_;
  std::vector<size_t> pos_, space_of_;
};

using TensorSpacePtr = std::shared_ptr<const TensorSpace>;

inline TensorSpacePtr tensor_space(TensorParams p) {
  if (p.s < 0 || p.t < 0 || p.a < 0 || p.b < 0) throw DomainError("tensor space with negative parameter");
  static std::mutex mu;
  static std::map<TensorParams, TensorSpacePtr> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
  }
  auto t = std::make_shared<const TensorSpace>(p);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(p, t).first->second;
}

/// gen^(a) acting through the coproduct:
///   e^(a)(m'(x)m'') = sum v^{a'a'' + a''<i,wt m'>} e^(a')m' (x) e^(a'')m''
///   f^(a)(m'(x)m'') = sum v^{a'a'' - a'<i,wt m''>} f^(a')m' (x) f^(a'')m''
inline TensorVec delta_act(const TensorSpace& T, Gen g, int a, const TensorVec& x) {
  if (a < 0) throw DomainError("delta_act: negative exponent");
  if (a == 0) return x;
  const auto& lo = T.low();
  const auto& hi = T.high();
  TensorVec y;
  for (int a1 = 0; a1 <= a; ++a1) {
    const int a2 = a - a1;
    const SparseMatrix& dl = lo.divided(g, a1);
    const SparseMatrix& dh = hi.divided(g, a2);
    for (const auto& [p, c] : x) {
      const size_t i = T.low_of(p), j = T.high_of(p);
      const auto& cl = dl.cols[i];
      const auto& ch = dh.cols[j];
      if (cl.empty() || ch.empty()) continue;
      const int e = g.kind == GenKind::E ? a1 * a2 + a2 * lo.weights()[i].pair(g.index)
                                         : a1 * a2 - a1 * hi.weights()[j].pair(g.index);
      for (const auto& [r1, x1] : cl) {
        const LaurentPoly c1 = (c * x1).shifted(e);
        for (const auto& [r2, x2] : ch) add_scaled(y, T.pair_index(r1, r2), c1 * x2);
      }
    }
  }
  return y;
}

/// (p1,p1') <= (q1,q1') on trace data: same difference class and strictly smaller on both sides, or equal.
inline bool pair_order_leq(std::pair<int, int> p, std::pair<int, int> q, bool same_pair) {
  if (same_pair) return true;
  if (p.first - p.second != q.first - q.second) return false;
  return p.first < q.first && p.second < q.second;
}

inline bool pair_order_leq(const TensorSpace& T, size_t p, size_t q) {
  return pair_order_leq({T.tr_low(p), T.tr_high(p)}, {T.tr_low(q), T.tr_high(q)}, p == q);
}

}  // namespace qcanon
