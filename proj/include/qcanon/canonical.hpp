#pragma once

// Canonical basis (b1 <> b1') of T by triangular correction against Psi.

#include "qcanon/psi.hpp"

#include <future>
#include <numeric>
#include <random>

namespace qcanon {

/// One canonical element per pair, indexed by pair index.
class CanonicalBasis {
public:
  CanonicalBasis(TensorSpacePtr T, std::vector<TensorVec> elems) : T_(std::move(T)), elems_(std::move(elems)) {}

  [[nodiscard]] const TensorSpace& space() const { return *T_; }
  [[nodiscard]] const TensorVec& at(size_t pair) const { return elems_[pair]; }
  [[nodiscard]] const std::vector<TensorVec>& all() const { return elems_; }
  /// Correction coefficients: coordinates other than the leading one.
  [[nodiscard]] TensorVec corrections(size_t pair) const {
    TensorVec c = elems_[pair];
    c.erase(pair);
    return c;
  }

private:
  TensorSpacePtr T_;
  std::vector<TensorVec> elems_;
};

/// Processing order within one degree class. `Shuffled` uses a seeded permutation; the result must not change.
enum class TieBreak { BasisOrder, Shuffled };

namespace detail {

// v^-1 Z[v^-1] part of f, i.e. sum_{n>0} coeff(v^-n) v^-n.
inline LaurentPoly negative_part(const LaurentPoly& f) {
  std::vector<LaurentPoly::Term> t;
  for (const auto& [e, c] : f.terms())
    if (e < 0) t.emplace_back(e, c);
  return LaurentPoly::from_terms(std::move(t));
}

}  // namespace detail

inline CanonicalBasis canonical_basis(const TensorSpacePtr& T, const PsiOperator& P,
                                      TieBreak order = TieBreak::BasisOrder, unsigned seed = 1) {
  std::vector<TensorVec> out(T->dim());
  std::mt19937 rng(seed);
  for (const auto& ws : T->weight_spaces()) {
    std::vector<size_t> seq = ws.pairs;  // already sorted by tr|b1|, hence by total degree
    if (order == TieBreak::Shuffled) {
      for (size_t lo = 0; lo < seq.size();) {
        size_t hi = lo;
        while (hi < seq.size() && T->tr_low(seq[hi]) == T->tr_low(seq[lo])) ++hi;
        std::shuffle(seq.begin() + static_cast<long>(lo), seq.begin() + static_cast<long>(hi), rng);
        lo = hi;
      }
    }
    for (size_t p : seq) {
      TensorVec y = T->standard(p);
      const size_t cap = 4 * ws.pairs.size() + 4;
      for (size_t iter = 0;; ++iter) {
        if (iter > cap) throw NonterminatingCorrection("correction did not terminate at pair " + std::to_string(p));
        TensorVec d = P.apply(y) - y;
        if (d.empty()) break;
        size_t q = d.begin()->first;
        for (const auto& [r, c] : d)
          if (T->tr_low(r) > T->tr_low(q)) q = r;
        const LaurentPoly& f = d.at(q);
        if (f.bar() != -f)
          throw AntisymmetryFailure("coefficient " + f.to_string() + " at pair " + std::to_string(q) +
                                    " is not bar-antisymmetric");
        if (out[q].empty()) throw IntegrityError("correction references an unfinished pair");
        add_scaled(y, out[q], detail::negative_part(f));
      }
      out[p] = std::move(y);
    }
  }
  return CanonicalBasis(T, std::move(out));
}

/// Psi-fixed, coefficient 1 at `expected_pair`, everything else in v^-1 Z[v^-1].
inline bool verify_canonical(const PsiOperator& P, const TensorVec& x, size_t expected_pair) {
  auto it = x.find(expected_pair);
  if (it == x.end() || !it->second.is_one()) return false;
  for (const auto& [p, c] : x)
    if (p != expected_pair && !c.in_strict_negative_part()) return false;
  return P.apply(x) == x;
}

/// Everything derived from one (s,t,a,b), shared read-only between tasks.
struct Workspace {
  TensorSpacePtr space;
  std::shared_ptr<const PsiOperator> psi;
  std::shared_ptr<const CanonicalBasis> canon;
};
using WorkspacePtr = std::shared_ptr<const Workspace>;

/// Memoized per process; Psi goes through the disk cache named by QCANON_CACHE_DIR (if set).
inline WorkspacePtr workspace(TensorParams p) {
  static std::mutex mu;
  static std::map<TensorParams, std::shared_future<WorkspacePtr>> memo;
  std::promise<WorkspacePtr> promise;
  std::shared_future<WorkspacePtr> pending;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(p);
    if (it != memo.end()) pending = it->second;
    else memo.emplace(p, promise.get_future().share());
  }
  if (pending.valid()) return pending.get();
  try {
    auto w = std::make_shared<Workspace>();
    w->space = tensor_space(p);
    w->psi = std::make_shared<const PsiOperator>(load_or_build_psi(w->space, default_cache_dir()));
    w->canon = std::make_shared<const CanonicalBasis>(canonical_basis(w->space, *w->psi));
    promise.set_value(w);
    return w;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

}  // namespace qcanon
