#include "helpers.hpp"
#include "qcanon/verify.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qcanon;
using namespace qtest;

namespace {

UdotWord W(const char* s) { return UdotWord::parse(s); }
UdotExpr X(const char* s) { return UdotExpr::parse(s); }

// The word applied to xi (x) eta through dense Kronecker-product matrices.
std::vector<LaurentPoly> dense_eval(const TensorSpace& T, const UdotWord& w) {
  std::vector<LaurentPoly> x = to_dense(T.standard(T.top_pair()), T.dim());
  if (w.source_weight() != T.top_weight()) return std::vector<LaurentPoly>(T.dim());
  for (auto f = w.right.rbegin(); f != w.right.rend(); ++f)
    x = mat_apply(naive_divided(tensor_generator(T, f->gen), f->exp), x);
  for (auto f = w.left.rbegin(); f != w.left.rend(); ++f)
    x = mat_apply(naive_divided(tensor_generator(T, f->gen), f->exp), x);
  return x;
}

UdotWord random_word(std::mt19937& rng, Weight idem) {
  std::uniform_int_distribution<int> len(0, 3), gen(0, 3), ex(1, 2);
  auto side = [&] {
    std::vector<Factor> fs;
    for (int i = len(rng); i > 0; --i) fs.push_back({kAllGens[gen(rng)], ex(rng)});
    return fs;
  };
  auto left = side();
  return UdotWord::make(left, idem, side());
}

}  // namespace

TEST(UdotWord, RoundTrip) {
  for (const char* s : {"1[(0,0)]", "e2^3 e1^4 1[(-1,2)] f2^1", "f1^2 1[(3,-3)]", "1[(1,1)] e1^1 f2^2"})
    EXPECT_EQ(W(s).to_string(), s);
  EXPECT_EQ(W("e1 1[(0,0)] f2"), W("e1^1 1[(0,0)] f2^1"));
  EXPECT_EQ(W("e1^0 1[(0,0)] f2^0"), W("1[(0,0)]"));
}

TEST(UdotWord, ParseErrors) {
  for (const char* s : {"", "e1^2", "1[(0,0)] 1[(1,1)]", "g1 1[(0,0)]", "e3 1[(0,0)]", "e1^ 1[(0,0)]", "e1^x 1[(0,0)]",
                        "1[(0,0)", "1[0,0]", "1[(0,0)]x"})
    EXPECT_THROW(W(s), ParseError) << s;
  EXPECT_THROW(UdotWord::make({{E1, -1}}, {}, {}), DomainError);
}

TEST(UdotWord, Weights) {
  const UdotWord w = W("e2^1 e1^2 1[(1,0)] f1^1 f2^2");
  // f2^2 then f1 lower the weight by 2 alpha2 + alpha1
  EXPECT_EQ(w.source_weight(), (Weight{1, 0} + simple_root(1) + 2 * simple_root(2)));
  EXPECT_EQ(w.target_weight(), (Weight{1, 0} + 2 * simple_root(1) + simple_root(2)));
}

TEST(UdotExpr, CombinesAndRoundTrips) {
  UdotExpr x;
  EXPECT_EQ(x.to_string(), "0");
  x.add(W("e1 1[(0,0)]"), LaurentPoly::vpow(1));
  x.add(W("e1^1 1[(0,0)]"), -LaurentPoly::vpow(1));
  EXPECT_TRUE(x.is_zero());
  const UdotExpr y = X("(v + v^-1) * e1^1 1[(0,0)] f1^1 + 1[(2,-1)] f1^1 + (-1) * e2^2 1[(0,0)] f1^1");
  EXPECT_EQ(y.size(), 3u);
  EXPECT_EQ(UdotExpr::parse(y.to_string()), y);
  EXPECT_EQ(X("0"), UdotExpr{});
  EXPECT_THROW(X(""), ParseError);
  EXPECT_THROW(X("1[(0,0)] + "), ParseError);
  EXPECT_THROW(X("(v * 1[(0,0)]"), ParseError);
  EXPECT_EQ(y.source_weight(), std::nullopt);
  EXPECT_EQ(X("e1 1[(0,0)] f1 + 1[(0,0)] f2^0 e1^0 f1^1").source_weight(), (Weight{2, -1}));
}

TEST(UdotExpr, SigmaSwapBar) {
  const UdotExpr x = X("(v^2) * e2^1 e1^2 1[(1,-2)] f1^1 + (3) * 1[(0,1)] f2^1");
  EXPECT_EQ(sigma(x), X("(v^2) * f1^1 1[(-1,2)] e1^2 e2^1 + (3) * f2^1 1[(0,-1)]"));
  EXPECT_EQ(index_swap(x), X("(v^2) * e1^1 e2^2 1[(-2,1)] f2^1 + (3) * 1[(1,0)] f1^1"));
  EXPECT_EQ(bar_udot(x), X("(v^-2) * e2^1 e1^2 1[(1,-2)] f1^1 + (3) * 1[(0,1)] f2^1"));
  EXPECT_EQ(sigma(sigma(x)), x);
  EXPECT_EQ(index_swap(index_swap(x)), x);
  EXPECT_EQ(bar_udot(bar_udot(x)), x);
  EXPECT_EQ(sigma(index_swap(x)), index_swap(sigma(x)));
  // sigma reverses words, so source weight becomes minus the target weight
  for (const auto& [w, c] : x.terms()) EXPECT_EQ(sigma(w).source_weight(), -w.target_weight());
}

TEST(Evaluate, Idempotents) {
  auto T = tensor_space({1, 1, 2, 0});
  const Weight z = T->top_weight();
  EXPECT_EQ(z, (Weight{1, -1}));
  UdotExpr one(UdotWord::make({}, z, {}));
  EXPECT_EQ(evaluate(one, *T), T->standard(T->top_pair()));
  EXPECT_TRUE(evaluate(UdotExpr(UdotWord::make({}, z + Weight{1, 0}, {})), *T).empty());
  // the idempotent acts after the right part
  EXPECT_TRUE(evaluate(X("1[(1,-1)] f1^1"), *T).empty());
}

TEST(Evaluate, SmallExample) {
  // in L(w1) (x) ... with xi weight 0: e1 1 f1 sends the tensor to f1 then back
  auto T = tensor_space({0, 0, 1, 0});
  TensorVec y = evaluate(X("e1^1 1[(-1,1)] f1^1"), *T);
  EXPECT_EQ(y, T->standard(T->top_pair()));
  EXPECT_TRUE(evaluate(X("f1^1 1[(3,-1)] e1^1"), *T).empty());
}

TEST(Evaluate, AgreesWithKroneckerOracle) {
  std::mt19937 rng(11);
  for (const auto& tp : std::vector<TensorParams>{{1, 0, 1, 0}, {0, 1, 1, 1}, {1, 1, 1, 1}, {2, 0, 0, 2}}) {
    auto T = tensor_space(tp);
    int nonzero = 0;
    for (int it = 0; it < 60; ++it) {
      UdotWord w = random_word(rng, {0, 0});
      // move the idempotent so the word can act on xi (x) eta
      Weight shift = T->top_weight();
      for (const auto& f : w.right) shift = shift + f.gen.shift(f.exp);
      w.idem = shift;
      const TensorVec got = evaluate(UdotExpr(w), *T);
      EXPECT_EQ(to_dense(got, T->dim()), dense_eval(*T, w)) << tp.to_string() << " " << w.to_string();
      nonzero += !got.empty();
    }
    EXPECT_GT(nonzero, 5);
  }
}

TEST(Evaluate, Linear) {
  auto T = tensor_space({1, 1, 1, 1});
  const UdotExpr a = X("e1^1 1[(1,-2)] f2^1"), b = X("f2^1 e2^1 1[(0,0)]");
  const LaurentPoly c = LaurentPoly::parse("v^2 - 3");
  UdotExpr s = a;
  s.add(b, c);
  TensorVec expect = evaluate(a, *T);
  add_scaled(expect, evaluate(b, *T), c);
  EXPECT_EQ(evaluate(s, *T), expect);
}

TEST(Families, Ids) {
  auto ids = all_families();
  EXPECT_EQ(ids.size(), 52u);
  EXPECT_EQ(std::set<FamilyId>(ids.begin(), ids.end()).size(), 52u);
  for (FamilyId id : ids) EXPECT_EQ(FamilyId::parse(id.to_string()), id);
  EXPECT_EQ(FamilyId::parse("(12')"), (FamilyId{12, true, false}));
  EXPECT_EQ(FamilyId::parse("m3"), (FamilyId{3, false, true}));
  for (const char* s : {"", "0", "14", "m", "x1", "1''"}) EXPECT_THROW(FamilyId::parse(s), ParseError) << s;
}

TEST(Families, SimplestElements) {
  auto el = family_element({1, false, false}, {});
  EXPECT_TRUE(el.admissible);
  EXPECT_EQ(el.expr, X("1[(0,0)]"));
  FamilyParams P{0, 1, 0, -2, 1, 0, 1, 0};
  EXPECT_FALSE(family_element({1, false, false}, P).admissible);
  EXPECT_THROW(family_element({1, false, false}, FamilyParams{-1, 0, 0, 0, 0, 0, 0, 0}), DomainError);
  EXPECT_THROW(family_element({14, false, false}, {}), DomainError);
}

TEST(Families, BinomialTermOfSecondFamily) {
  const FamilyParams P{0, 2, 1, 1, -5, 1, 2, 0};
  auto el = family_element({2, false, false}, P);
  ASSERT_EQ(el.expr.size(), 2u);
  const UdotWord lead = UdotWord::make({{E2, 0}, {E1, 2}, {E2, 1}}, {1, -5}, {{F2, 1}, {F1, 2}, {F2, 0}});
  const UdotWord next = UdotWord::make({{E2, 0}, {E1, 2}, {E2, 0}}, {0, -3}, {{F2, 0}, {F1, 2}, {F2, 0}});
  EXPECT_TRUE(el.expr.terms().at(lead).is_one());
  // -[m + u + j over 1] with m + u + j = -3
  EXPECT_EQ(el.expr.terms().at(next), -qbinom(-3, 1));
  EXPECT_EQ(el.expr.terms().at(next), qint(3));
}

TEST(Families, SourceWeightsAgree) {
  for (FamilyId id : all_families())
    for (const FamilyParams& P : sweep_params(id, 1, 2, 4)) {
      auto el = family_element(id, P);
      EXPECT_EQ(el.expr.source_weight(), el.zeta);
      // all terms land in one weight too
      for (const auto& [w, c] : el.expr.terms())
        EXPECT_EQ(w.target_weight(), el.expr.terms().begin()->first.target_weight()) << id.to_string();
    }
}

TEST(Families, SigmaImagesMatchHandTranscription) {
  int admissible = 0;
  for (int n : {1, 2})
    for (FamilyParams P : exponent_tuples(2))
      for (int l = -5; l <= 5; ++l)
        for (int m = -5; m <= 5; ++m) {
          P.l = l;
          P.m = m;
          auto a = family_element({n, true, false}, P), b = printed_primed_family(n, P);
          EXPECT_EQ(a.admissible, b.admissible) << n << " " << P.to_string();
          if (!a.admissible) continue;
          ++admissible;
          EXPECT_EQ(a.expr, b.expr) << n << " " << P.to_string();
          EXPECT_EQ(a.e_label, b.e_label);
          EXPECT_EQ(a.f_label, b.f_label);
        }
  EXPECT_GT(admissible, 100);
}

TEST(Families, MirrorAndSigmaAreInvolutive) {
  for (int n = 1; n <= 13; ++n)
    for (const FamilyParams& P : sweep_params({n, false, false}, 1, 2, 4)) {
      auto base = family_element({n, false, false}, P);
      EXPECT_EQ(index_swap(family_element({n, false, true}, P).expr), base.expr);
      const FamilyParams Q{P.j, P.k, P.h, -P.l, -P.m, P.w, P.v, P.u};
      EXPECT_EQ(sigma(family_element({n, true, false}, Q).expr), base.expr);
    }
}
