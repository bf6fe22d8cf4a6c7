#include "omega/psl2.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace omega;

TEST(GroupElement, SignIsCanonical) {
  GroupElement neg(-1, 0, 0, -1);
  EXPECT_TRUE(neg.is_identity());
  EXPECT_EQ(GroupElement(0, 1, -1, 0), GroupElement(0, -1, 1, 0));
  EXPECT_THROW(GroupElement(2, 0, 0, 1), std::invalid_argument);
}

TEST(GroupElement, ConjugatedTranslation) {
  for (int p : {2, 3, 5}) {
    GroupElement a = generator_matrix(Generator::A, p), t = generator_matrix(Generator::T, p);
    GroupElement x = a * t * a.inverse();
    EXPECT_EQ(x, GroupElement(1, p * p, 0, 1));
    EXPECT_TRUE(x.has_entries_in(p));
  }
  GroupElement s = generator_matrix(Generator::S, 2);
  EXPECT_TRUE((s * s).is_identity());
  GroupElement st = s * generator_matrix(Generator::T, 2);
  EXPECT_TRUE((st * st * st).is_identity());
}

TEST(GroupElement, InverseAndAssociativity) {
  std::mt19937_64 g(1);
  auto gens = generating_set(3);
  for (int i = 0; i < 100; ++i) {
    GroupElement x, y, z;
    for (int k = 0; k < 6; ++k) x = x * gens[g() % 3], y = y * gens[g() % 3].inverse(), z = z * gens[g() % 3];
    EXPECT_TRUE((x * x.inverse()).is_identity());
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(multiply(x, y), x * y);
    EXPECT_EQ(invert(x), x.inverse());
  }
}

TEST(Word, ParseAndReduce) {
  Word w = Word::parse("STtAa S");
  EXPECT_EQ(w.size(), 6u);
  EXPECT_EQ(w.freely_reduced().str(), "SS");
  EXPECT_TRUE(word_problem(w, 2));
  EXPECT_FALSE(word_problem(Word::parse("T"), 2));
  EXPECT_THROW(Word::parse("X"), std::invalid_argument);
  Word u = Word::parse("STA");
  EXPECT_TRUE(word_problem(u + u.inverse(), 5));
  EXPECT_EQ(u.inverse().str(), "ats");
}

TEST(GroupBall, MatchesWordEnumeration) {
  const int p = 2, radius = 4;
  std::map<std::string, int> shortest;
  std::vector<Word> layer{Word{}};
  shortest[GroupElement().key()] = 0;
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Generator gen : {Generator::S, Generator::T, Generator::A})
        for (int e : {1, -1}) {
          Word x = w + Word({Letter{gen, e}});
          next.push_back(x);
          shortest.emplace(word_to_matrix(x, p).key(), r);
        }
    layer = std::move(next);
  }
  auto ball = group_ball(p, radius);
  ASSERT_EQ(ball.size(), shortest.size());
  for (const BallEntry& e : ball) EXPECT_EQ(shortest.at(e.element.key()), e.length);
  std::size_t prev = 0;
  for (int r = 0; r <= radius; ++r) {
    std::size_t n = group_ball(p, r).size();
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(GroupElement, JsonRoundTrip) {
  GroupElement g(Rational(1, 2), 3, Rational(-1, 4), Rational(1, 2));
  EXPECT_EQ(group_element_from_json(to_json(g)), g);
  EXPECT_THROW(group_element_from_json(nlohmann::json::array({"1", "0"})), std::invalid_argument);
}

TEST(GroupElement, RealImageActsCompatibly) {
  GroupElement g = word_to_matrix(Word::parse("STAtS"), 3);
  Mat2 m = g.to_real();
  EXPECT_NEAR(m.det(), 1.0, 1e-12);
  HPoint z = mobius_apply(m, HPoint{0.3, 1.2});
  HPoint w = mobius_apply(generator_matrix(Generator::S, 3).to_real(),
                          mobius_apply(word_to_matrix(Word::parse("TAtS"), 3).to_real(), HPoint{0.3, 1.2}));
  EXPECT_NEAR(z.x, w.x, 1e-12);
  EXPECT_NEAR(z.y, w.y, 1e-12);
}
