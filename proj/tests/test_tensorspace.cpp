#include "helpers.hpp"
#include "qcanon/psi.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

using namespace qcanon;
using namespace qtest;

namespace {

TensorVec random_lattice_vector(const TensorSpace& T, std::mt19937& rng) {
  std::uniform_int_distribution<size_t> pick(0, T.dim() - 1);
  std::uniform_int_distribution<int> co(-3, 3), ex(-2, 2);
  const auto& ws = T.space_of(pick(rng));
  TensorVec x;
  for (size_t p : ws.pairs) add_scaled(x, p, LaurentPoly::monomial(Integer(co(rng)), ex(rng)));
  return x;
}

TensorVec random_word_image(const TensorSpace& T, std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> g(0, 3), a(1, 2);
  TensorVec x = T.standard(T.top_pair());
  for (int i = 0; i < len; ++i) x = delta_act(T, kAllGens[g(rng)], a(rng), x);
  return x;
}

const std::vector<TensorParams> kSmall = {{0, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 1, 1}, {2, 0, 0, 1}, {1, 0, 2, 1}};

}  // namespace

TEST(TensorSpace, DimensionAndWeights) {
  auto T = tensor_space({1, 1, 2, 0});
  EXPECT_EQ(T->dim(), 8u * 6u);
  size_t total = 0;
  for (const auto& ws : T->weight_spaces()) {
    total += ws.pairs.size();
    for (size_t k = 0; k < ws.pairs.size(); ++k) {
      const size_t p = ws.pairs[k];
      EXPECT_EQ(T->weight(p), ws.weight);
      EXPECT_EQ(T->position(p), k);
      EXPECT_EQ(T->weight(p), T->low().weights()[T->low_of(p)] + T->high().weights()[T->high_of(p)]);
      // tr|b1| - tr|b1'| is constant on a weight space
      EXPECT_EQ(T->tr_low(p) - T->tr_high(p), T->tr_low(ws.pairs[0]) - T->tr_high(ws.pairs[0]));
    }
  }
  EXPECT_EQ(total, T->dim());
  EXPECT_EQ(T->weight(T->top_pair()), (Weight{1, -1}));
}

TEST(DeltaAct, Trivial) {
  auto T = tensor_space({1, 1, 1, 1});
  TensorVec top = T->standard(T->top_pair());
  EXPECT_EQ(delta_act(*T, E1, 0, top), top);
  // f1 kills xi, so f1(xi (x) eta) = xi (x) f1 eta
  auto f1eta = act_divided(T->high(), F1, 1, std::vector<LaurentPoly>{1, 0, 0, 0, 0, 0, 0, 0});
  TensorVec expect;
  for (size_t j = 0; j < f1eta.size(); ++j) add_scaled(expect, T->pair_index(0, j), f1eta[j]);
  EXPECT_EQ(delta_act(*T, F1, 1, top), expect);
}

TEST(DeltaAct, E2SquaredOnTopVector) {
  auto T = tensor_space({1, 1, 1, 1});
  TensorVec y = delta_act(*T, E2, 2, T->standard(T->top_pair()));
  Dense e2 = tensor_generator(*T, E2);
  auto oracle = mat_apply(naive_divided(e2, 2), to_dense(T->standard(T->top_pair()), T->dim()));
  EXPECT_EQ(to_dense(y, T->dim()), oracle);
  // the e2-string through the lowest vector has length 1
  EXPECT_TRUE(y.empty());
  EXPECT_EQ(delta_act(*T, E2, 1, T->standard(T->top_pair())).size(), 1u);
}

TEST(DeltaAct, MatchesCoproductMatrices) {
  for (const auto& tp : kSmall) {
    auto T = tensor_space(tp);
    for (Gen g : kAllGens) {
      Dense one = tensor_generator(*T, g);
      for (int a = 1; a <= 3; ++a) {
        Dense da = naive_divided(one, a);
        for (size_t p = 0; p < T->dim(); ++p)
          EXPECT_EQ(to_dense(delta_act(*T, g, a, T->standard(p)), T->dim()) , mat_apply(da, to_dense(T->standard(p), T->dim())))
              << tp.to_string() << " " << g.to_string() << "^" << a << " pair " << p;
      }
    }
  }
}

TEST(PairOrder, Examples) {
  EXPECT_TRUE(pair_order_leq({2, 1}, {2, 1}, true));
  EXPECT_TRUE(pair_order_leq({0, 0}, {1, 1}, false));
  EXPECT_FALSE(pair_order_leq({0, 1}, {1, 1}, false));
  EXPECT_FALSE(pair_order_leq({1, 1}, {0, 0}, false));
  EXPECT_FALSE(pair_order_leq({1, 1}, {1, 1}, false));
}

TEST(Psi, IdentityOnIrreducibleT) {
  auto T = tensor_space({0, 0, 1, 0});
  auto P = build_psi(T);
  for (size_t si = 0; si < T->weight_spaces().size(); ++si) {
    ASSERT_EQ(P.rho(si).size(), 1u);
    EXPECT_TRUE(P.rho(si)[0][0].is_one());
  }
}

TEST(Psi, TopSpaceAndSemilinearity) {
  auto T = tensor_space({2, 1, 1, 2});
  auto P = build_psi(T);
  EXPECT_GT(T->space_of(T->top_pair()).pairs.size(), 1u);
  EXPECT_EQ(P.apply(T->standard(T->top_pair())), T->standard(T->top_pair()));
  TensorVec x{{T->top_pair(), LaurentPoly::vpow(1)}};
  EXPECT_EQ(P.apply(x), (TensorVec{{T->top_pair(), LaurentPoly::vpow(-1)}}));
}

TEST(Psi, ZeroWeightSpaceOfSmallProduct) {
  auto T = tensor_space({1, 0, 1, 0});
  auto P = build_psi(T);
  const WeightSpace* ws = T->find_space({0, 0});
  ASSERT_NE(ws, nullptr);
  EXPECT_EQ(ws->pairs.size(), 3u);
  const auto& rho = P.rho(T->space_index(ws->pairs[0]));
  bool off_diagonal = false;
  for (size_t r = 0; r < rho.size(); ++r)
    for (size_t c = 0; c < rho.size(); ++c) {
      if (r == c) EXPECT_TRUE(rho[r][c].is_one());
      else if (!rho[r][c].is_zero()) {
        off_diagonal = true;
        EXPECT_LT(r, c);
      }
    }
  EXPECT_TRUE(off_diagonal);
}

TEST(Psi, InvolutionAndIntertwining) {
  std::mt19937 rng(5);
  for (const auto& tp : std::vector<TensorParams>{{1, 0, 1, 0}, {1, 1, 1, 1}, {2, 0, 1, 1}, {0, 2, 2, 1}, {1, 2, 2, 1}}) {
    auto T = tensor_space(tp);
    auto P = build_psi(T);
    for (size_t p = 0; p < T->dim(); ++p) EXPECT_EQ(P.apply(P.apply(T->standard(p))), T->standard(p));
    for (int it = 0; it < 30; ++it) {
      TensorVec x = random_lattice_vector(*T, rng);
      for (Gen g : kAllGens)
        for (int a = 1; a <= 2; ++a) EXPECT_EQ(P.apply(delta_act(*T, g, a, x)), delta_act(*T, g, a, P.apply(x)));
      // weight spaces are preserved
      const TensorVec y = P.apply(x);
      if (!x.empty() && !y.empty()) {
        EXPECT_EQ(T->weight(y.begin()->first), T->weight(x.begin()->first));
      }
    }
    for (int it = 0; it < 20; ++it) {
      TensorVec x = random_word_image(*T, rng, 1 + it % 5);
      EXPECT_EQ(P.apply(x), x);
    }
  }
}

TEST(Psi, SpanningConstructionAgrees) {
  for (const auto& tp : std::vector<TensorParams>{{0, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 1, 1}, {1, 1, 1, 0}}) {
    auto T = tensor_space(tp);
    EXPECT_EQ(build_psi_by_span(T).all(), build_psi(T).all()) << tp.to_string();
  }
  EXPECT_THROW(build_psi_by_span(tensor_space({1, 1, 1, 1}), 3), SpanFailure);
}

TEST(Psi, DiskCacheRoundTripAndCorruption) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("qcanon-psi-test-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  auto T = tensor_space({1, 1, 2, 0});
  const auto fresh = build_psi(T);
  CacheEvent ev;
  EXPECT_EQ(load_or_build_psi(T, dir.string(), &ev).all(), fresh.all());
  EXPECT_FALSE(ev.corrupted);
  const fs::path file = dir / "psi_1_1_2_0.json";
  ASSERT_TRUE(fs::exists(file));
  EXPECT_EQ(load_or_build_psi(T, dir.string(), &ev).all(), fresh.all());
  EXPECT_FALSE(ev.corrupted);
  // flip one coefficient: the reloaded rho would violate bar(rho) rho = I
  std::string text;
  {
    std::ifstream in(file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto pos = text.find("\"-1\"");
  if (pos == std::string::npos) pos = text.find("\"1\"", text.find("rho"));
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 3, "\"7");
  {
    std::ofstream out(file);
    out << text;
  }
  EXPECT_EQ(load_or_build_psi(T, dir.string(), &ev).all(), fresh.all());
  EXPECT_TRUE(ev.corrupted);
  {
    std::ofstream out(file);
    out << "{ not json";
  }
  ev = {};
  EXPECT_EQ(load_or_build_psi(T, dir.string(), &ev).all(), fresh.all());
  EXPECT_TRUE(ev.corrupted);
  fs::remove_all(dir);
}
