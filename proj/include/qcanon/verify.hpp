#pragma once

// Checking the explicit family elements against the canonical bases of the tensor products.

#include "qcanon/canonical.hpp"
#include "qcanon/families.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace qcanon {

enum class Outcome { MatchedCanonical, MatchedZero, Mismatch };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::MatchedCanonical: return "matched-canonical";
    case Outcome::MatchedZero: return "matched-zero";
    default: return "mismatch";
  }
}

struct TupleOutcome {
  TensorParams tensor;
  Outcome kind = Outcome::Mismatch;
  std::optional<size_t> pair;  // the canonical element compared against
  bool psi_fixed = false;
  TensorVec value;             // the evaluation
  std::string detail;          // why it failed
};

struct VerificationReport {
  FamilyId family;
  FamilyParams params;
  bool admissible = false;
  MonomialLabel e_label, f_label;
  Weight zeta;
  std::vector<TupleOutcome> outcomes;
  double seconds = 0;

  [[nodiscard]] size_t mismatches() const {
    return static_cast<size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                             [](const TupleOutcome& o) { return o.kind == Outcome::Mismatch; }));
  }
};

/// (s,t,a,b) with s+t <= W, a+b <= W and (a,b) - (s,t) = zeta.
inline std::vector<TensorParams> window_for(Weight zeta, int W) {
  std::vector<TensorParams> out;
  for (int s = 0; s <= W; ++s)
    for (int t = 0; s + t <= W; ++t) {
      const int a = s + zeta.l1, b = t + zeta.l2;
      if (a >= 0 && b >= 0 && a + b <= W) out.push_back({s, t, a, b});
    }
  return out;
}

namespace detail {

inline std::string vec_to_string(const TensorSpace& T, const TensorVec& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [p, c] : x) {
    auto [lo, hi] = T.labels(p);
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")[" + lo.to_string() + " | " + hi.to_string() + "]";
  }
  return s;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Evaluates the family element on xi (x) eta over the window. When both labels lie in their B-sets
/// the value must be the canonical element at that pair, otherwise it must vanish.
/// Inadmissible parameters give a report with no outcomes.
inline VerificationReport theorem31_verify(FamilyId id, const FamilyParams& P, int W,
                                           std::optional<Mutation> mut = std::nullopt) {
  const auto t0 = std::chrono::steady_clock::now();
  FamilyElement el = family_element(id, P, mut);
  VerificationReport rep{id, P, el.admissible, el.e_label, el.f_label, el.zeta, {}, 0};
  if (!el.admissible) return rep;
  for (const TensorParams& tp : window_for(el.zeta, W)) {
    WorkspacePtr ws = workspace(tp);
    const TensorSpace& T = *ws->space;
    TupleOutcome o;
    o.tensor = tp;
    o.value = evaluate(el.expr, T);
    o.psi_fixed = ws->psi->apply(o.value) == o.value;
    o.pair = T.index_of(el.e_label, el.f_label);
    if (o.pair) {
      const TensorVec& expect = ws->canon->at(*o.pair);
      if (o.value == expect && o.psi_fixed) o.kind = Outcome::MatchedCanonical;
      else o.detail = "difference " + detail::vec_to_string(T, o.value - expect);
    } else if (o.value.empty()) {
      o.kind = Outcome::MatchedZero;
    } else {
      o.detail = "expected 0, got " + detail::vec_to_string(T, o.value);
    }
    if (o.kind == Outcome::Mismatch && !o.psi_fixed) o.detail += " (not Psi-fixed)";
    rep.outcomes.push_back(std::move(o));
  }
  rep.seconds = detail::seconds_since(t0);
  return rep;
}

/// A value that has no expected pair must be 0 or a canonical element; the pair is read off from
/// the unique unit coordinate.
inline TupleOutcome classify_value(const Workspace& ws, TensorParams tp, TensorVec value) {
  TupleOutcome o;
  o.tensor = tp;
  o.value = std::move(value);
  o.psi_fixed = ws.psi->apply(o.value) == o.value;
  if (o.value.empty()) {
    o.kind = Outcome::MatchedZero;
    return o;
  }
  for (const auto& [p, c] : o.value)
    if (c.is_one()) {
      if (o.pair) {
        o.pair.reset();
        break;
      }
      o.pair = p;
    }
  if (o.pair && verify_canonical(*ws.psi, o.value, *o.pair) && o.value == ws.canon->at(*o.pair))
    o.kind = Outcome::MatchedCanonical;
  else
    o.detail = "not canonical: " + detail::vec_to_string(*ws.space, o.value);
  return o;
}

/// classify_value over the window of an arbitrary expression with one source weight.
inline std::vector<TupleOutcome> expression_verify(const UdotExpr& x, int W) {
  auto zeta = x.source_weight();
  if (!zeta) throw DomainError("expression mixes source weights: " + x.to_string());
  std::vector<TupleOutcome> out;
  for (const TensorParams& tp : window_for(*zeta, W)) {
    WorkspacePtr ws = workspace(tp);
    out.push_back(classify_value(*ws, tp, evaluate(x, *ws->space)));
  }
  return out;
}

/// sigma of the family element must evaluate to 0 or to a canonical element of each tensor
/// product in the window.
inline VerificationReport sigma_closure_check(FamilyId id, const FamilyParams& P, int W) {
  const auto t0 = std::chrono::steady_clock::now();
  FamilyElement el = family_element(id, P);
  const UdotExpr img = sigma(el.expr);
  const Weight zeta = img.source_weight().value_or(Weight{});
  VerificationReport rep{id, P, el.admissible, el.e_label, el.f_label, zeta, {}, 0};
  if (!el.admissible) return rep;
  rep.outcomes = expression_verify(img, W);
  rep.seconds = detail::seconds_since(t0);
  return rep;
}

/// Exponent tuples with entries in [0,E] satisfying k >= h+j and v >= u+w.
inline std::vector<FamilyParams> exponent_tuples(int E) {
  std::vector<FamilyParams> out;
  for (int h = 0; h <= E; ++h)
    for (int k = 0; k <= E; ++k)
      for (int j = 0; j <= E; ++j)
        for (int u = 0; u <= E; ++u)
          for (int v = 0; v <= E; ++v)
            for (int w = 0; w <= E; ++w)
              if (k >= h + j && v >= u + w) out.push_back({h, k, j, 0, 0, u, v, w});
  return out;
}

/// Admissible parameter tuples of a family with |l|, |m| <= L whose window is nonempty.
inline std::vector<FamilyParams> sweep_params(FamilyId id, int E, int L, int W) {
  std::vector<FamilyParams> out;
  for (FamilyParams P : exponent_tuples(E))
    for (int l = -L; l <= L; ++l)
      for (int m = -L; m <= L; ++m) {
        P.l = l;
        P.m = m;
        FamilyElement el = family_element(id, P);
        if (el.admissible && !window_for(el.zeta, W).empty()) out.push_back(P);
      }
  return out;
}

/// Runs fn(i) for i in [0,n) on `threads` workers (0 = hardware concurrency).
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(n, 1)));
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace qcanon
