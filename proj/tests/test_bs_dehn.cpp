#include "omega/bs_dehn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace omega;

namespace {

BSWord random_word(std::mt19937_64& g, std::size_t max_len) {
  static const BSLetter all[] = {BSLetter::a, BSLetter::A, BSLetter::b, BSLetter::B};
  std::vector<BSLetter> w(g() % (max_len + 1));
  for (auto& x : w) x = all[g() % 4];
  return BSWord(w);
}

}  // namespace

TEST(BSWord, ParseAndPrint) {
  BSWord w = BSWord::parse("ab A\tB");
  EXPECT_EQ(w.str(), "abAB");
  EXPECT_EQ(w.inverse().str(), "baBA");
  EXPECT_EQ(BSWord::parse("abBA").freely_reduced().size(), 0u);
  EXPECT_THROW(BSWord::parse("abc"), std::invalid_argument);
  EXPECT_EQ(bs_relator(4).str(), "abABBBB");
  EXPECT_EQ(witness_loop(1).str(), "abAbaBAB");
  EXPECT_THROW(witness_loop(0), std::out_of_range);
}

TEST(BSNormalForm, Examples) {
  EXPECT_EQ(bs_normal_form(BSWord::parse("abA"), 4), (BSNormalForm{0, 4, 0}));
  EXPECT_EQ(bs_normal_form(BSWord::parse("Aba"), 4), (BSNormalForm{1, 1, 1}));
  EXPECT_TRUE(bs_normal_form(bs_relator(9), 9).is_identity());
  EXPECT_THROW(bs_normal_form(BSWord::parse("a"), 1), std::out_of_range);
}

TEST(BSNormalForm, AgreesWithMatrices) {
  std::mt19937_64 g(3);
  for (int p : {2, 3}) {
    long n = p * p;
    for (int i = 0; i < 2000; ++i) {
      BSWord w = random_word(g, 30), v = random_word(g, 6);
      BSNormalForm f = bs_normal_form(w, n);
      EXPECT_EQ(bs_normal_form_matrix(f, p), bs_word_matrix(w, p));
      if (f.k > 0 && f.l > 0) EXPECT_NE(f.m % n, 0);
      EXPECT_GE(f.k, 0);
      EXPECT_GE(f.l, 0);
      bool same_element = bs_word_matrix(w, p) == bs_word_matrix(v, p);
      EXPECT_EQ(bs_normal_form(v, n) == f, same_element);
    }
  }
}

TEST(WitnessLoop, LengthAndTriviality) {
  for (int k = 1; k <= 8; ++k) {
    BSWord w = witness_loop(k);
    EXPECT_EQ(w.size(), std::size_t(4 * k + 4));
    for (long n : {4L, 9L, 25L}) EXPECT_TRUE(bs_normal_form(w, n).is_identity());
  }
}

TEST(Area, SmallExamples) {
  EXPECT_EQ(area_oracle(BSWord(), 4).area, 0);
  AreaResult r = area_oracle(bs_relator(4), 4);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.area, 1);
  EXPECT_EQ(area_oracle(bs_relator(4).inverse(), 4).area, 1);
  EXPECT_EQ(area_oracle(witness_loop(1), 4).area, 2);
  EXPECT_EQ(area_by_search(witness_loop(1), 4, 3), std::optional<int>(2));
  EXPECT_EQ(area_by_search(bs_relator(4), 4, 2), std::optional<int>(1));
  EXPECT_THROW(area_oracle(BSWord::parse("ab"), 4), std::domain_error);
}

TEST(Area, MatchesSearchOnRelatorProducts) {
  std::mt19937_64 g(12);
  const long n = 4;
  BSWord rel = bs_relator(n);
  int compared = 0;
  for (int i = 0; i < 40; ++i) {
    BSWord w;
    int cells = 1 + g() % 2;
    for (int c = 0; c < cells; ++c) {
      BSWord conj = random_word(g, 3);
      w = w + conj + (g() % 2 ? rel : rel.inverse()) + conj.inverse();
    }
    w = w.freely_reduced();
    AreaResult dp = area_oracle(w, n);
    ASSERT_TRUE(dp.exact);
    EXPECT_LE(dp.area, cells);
    auto bfs = area_by_search(w, n, cells, 28, 300000);
    if (bfs) {
      ++compared;
      EXPECT_EQ(dp.area, *bfs) << w.str();
    }
  }
  EXPECT_GT(compared, 20);
}

TEST(Area, WitnessFamilyGrowsExponentially) {
  const long n = 4;
  Integer prev = 0;
  for (int k = 1; k <= 5; ++k) {
    AreaResult r = area_oracle(witness_loop(k), n);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.area, 2 * (integer_power(n, k) - 1) / (n - 1));
    EXPECT_GE(r.area, prev);
    prev = r.area;
  }
  // Super-additivity of the family: w_{k+1} costs at least n times w_k.
  EXPECT_GE(area_oracle(witness_loop(3), n).area, n * area_oracle(witness_loop(2), n).area);
}

TEST(Area, BudgetGivesLowerBound) {
  AreaResult r = area_oracle(witness_loop(6), 4, 100);
  EXPECT_FALSE(r.exact);
  EXPECT_GE(r.lower_bound, 0);
}

TEST(Rewriting, ExponentIsPower) {
  for (long n : {4L, 9L}) {
    for (int k = 0; k <= 8; ++k) {
      RewriteCost c = rewriting_cost(k, n);
      EXPECT_EQ(c.exponent, integer_power(n, k));
      EXPECT_EQ(c.relator_applications, (integer_power(n, k) - 1) / (n - 1));
    }
  }
}

TEST(EmbeddedLoop, ClosesWithLinearLength) {
  for (int p : {2, 3}) {
    OmegaModel model(p, 2.0);
    for (int k = 1; k <= 5; ++k) {
      EmbeddedLoop loop = embed_loop_in_sigma(witness_loop(k), model);
      EXPECT_LT(loop.closure_error, 1e-9);
      double expected = 4 * k * (1 + 2 * std::log(p)) + 4 / 2.0;
      EXPECT_NEAR(loop.length, expected, 1e-6 * expected);
      for (const OmegaPoint& q : loop.points)
        EXPECT_NEAR(q.plane.y, model.sigma_inf_height(q.tree), 1e-9 * q.plane.y);
    }
    EXPECT_THROW(embed_loop_in_sigma(BSWord::parse("ab"), model), std::domain_error);
  }
}

TEST(Distortion, ProjectedUnitSegment) {
  for (int p : {2, 3, 5}) {
    DistortionCheck d = projection_distortion_check(p);
    EXPECT_DOUBLE_EQ(d.tree_length, 1.0);
    EXPECT_NEAR(d.measured, 2 * std::log(p), 1e-12);
    EXPECT_DOUBLE_EQ(d.constant, 2 * std::log(p));
  }
}
