#include "omega/omega_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace omega;

namespace {

double unit(std::mt19937_64& g) { return std::uniform_real_distribution<double>(0.0, 1.0)(g); }

TreePoint random_tree_point(const BruhatTitsTree& tree, std::mt19937_64& g, int steps, bool on_edge) {
  TreeVertex v = tree.base();
  for (int i = 0; i < steps; ++i) {
    auto nb = tree.neighbors(v);
    v = nb[g() % nb.size()];
  }
  if (!on_edge) return TreePoint::vertex(v);
  auto nb = tree.neighbors(v);
  return {v, nb[g() % nb.size()], 0.05 + 0.9 * unit(g)};
}

GroupElement random_element(int p, std::mt19937_64& g, int len) {
  auto gens = generating_set(p);
  GroupElement x;
  for (int i = 0; i < len; ++i) {
    GroupElement s = gens[g() % gens.size()];
    x = x * (g() % 2 ? s : s.inverse());
  }
  return x;
}

}  // namespace

TEST(OmegaModel, DistanceIsProductSum) {
  OmegaModel m(2);
  BruhatTitsTree const& tree = m.tree();
  OmegaPoint q1{{0, 1}, TreePoint::vertex(tree.base())};
  OmegaPoint q2{{0, std::exp(1.0)}, TreePoint::vertex(tree.neighbors(tree.base())[1])};
  EXPECT_NEAR(m.distance(q1, q2), 1.5, 1e-12);
  EXPECT_NEAR(omega_distance(m, q1, q2), 1.5, 1e-12);
  EXPECT_EQ(m.distance(q1, q1), 0.0);
}

TEST(OmegaModel, SigmaInfHeights) {
  OmegaModel m(2, 2.0);
  const auto& tree = m.tree();
  EXPECT_DOUBLE_EQ(m.sigma_inf_height(TreePoint::vertex(tree.base())), 2.0);
  EXPECT_DOUBLE_EQ(m.sigma_inf_height(TreePoint::vertex(tree.neighbors(tree.base())[1])), 4.0);
  EXPECT_DOUBLE_EQ(m.sigma_inf_height(TreePoint::vertex(tree.parent(tree.base()))), 1.0);
  EXPECT_DOUBLE_EQ(m.sigma_inf_height(TreePoint::vertex({2, 0})), 8.0);
}

TEST(OmegaModel, InHoroballIsStrict) {
  OmegaModel m(3, 2.0);
  Horosphere s = make_horosphere(GroupElement());
  TreePoint t0 = TreePoint::vertex(m.tree().base());
  EXPECT_TRUE(m.in_horoball({{5, 2.5}, t0}, s));
  EXPECT_FALSE(m.in_horoball({{5, 2.0}, t0}, s));
  EXPECT_FALSE(m.in_horoball({{5, 1.0}, t0}, s));
}

TEST(OmegaModel, HorocircleOfConjugate) {
  OmegaModel m(2, 2.0);
  GroupElement s = generator_matrix(Generator::S, 2);
  Horosphere h = make_horosphere(s);
  ASSERT_TRUE(h.base.has_value());
  EXPECT_EQ(*h.base, 0);
  EXPECT_EQ(h.base_string(), "0");
  EXPECT_EQ(make_horosphere(GroupElement()).base_string(), "inf");
  Horocircle c = m.horocircle_in_plane(h, TreePoint::vertex(m.tree().base()));
  ASSERT_TRUE(std::holds_alternative<Tangent>(c));
  EXPECT_NEAR(std::get<Tangent>(c).base, 0.0, 1e-15);
  EXPECT_NEAR(std::get<Tangent>(c).diameter, 0.5, 1e-15);

  GroupElement g = word_to_matrix(Word::parse("TTSAT"), 2);
  Horosphere hg = make_horosphere(g);
  ASSERT_TRUE(hg.base.has_value());
  EXPECT_EQ(*hg.base, g.a() / g.c());
}

TEST(OmegaModel, EtaIsEquivariant) {
  std::mt19937_64 gen(5);
  for (int p : {2, 3}) {
    OmegaModel m(p, 2.0);
    for (int i = 0; i < 200; ++i) {
      GroupElement g = random_element(p, gen, 1 + gen() % 6);
      OmegaPoint q1{{unit(gen) * 4 - 2, 0.2 + unit(gen) * 2}, random_tree_point(m.tree(), gen, 3, gen() % 2)};
      OmegaPoint q2{{unit(gen) * 4 - 2, 0.2 + unit(gen) * 2}, random_tree_point(m.tree(), gen, 3, gen() % 2)};
      OmegaPoint g1 = m.eta_act(g, q1), g2 = eta_act(m, g, q2);
      double d = m.distance(q1, q2);
      EXPECT_NEAR(m.distance(g1, g2), d, 1e-8 * std::max(1.0, d));
      Horosphere s = make_horosphere(random_element(p, gen, 3));
      Horosphere gs = make_horosphere(g * s.g);
      double h = m.normalized_height(s, q1.tree), y = mobius_apply(s.g.inverse().to_real(), q1.plane).y;
      if (std::abs(y - h) > 1e-9 * h) EXPECT_EQ(m.in_horoball(q1, s), m.in_horoball(g1, gs));
    }
  }
}

TEST(OmegaModel, TranslationScalesSigmaInf) {
  for (int p : {2, 3, 5}) {
    OmegaModel m(p, 2.0);
    GroupElement a = generator_matrix(Generator::A, p);
    OmegaPoint q{{0, m.sigma_inf_height(TreePoint::vertex(m.tree().base()))}, TreePoint::vertex(m.tree().base())};
    OmegaPoint aq = m.eta_act(a, q);
    EXPECT_NEAR(aq.plane.y, p * p * q.plane.y, 1e-12);
    EXPECT_NEAR(m.sigma_inf_height(aq.tree), aq.plane.y, 1e-12);
  }
}

TEST(OmegaModel, SmallScenes) {
  OmegaModel m(2, 2.0);
  SceneWindow w;
  Scene s0 = m.enumerate_scene(0, w, 0.0);
  ASSERT_EQ(s0.horospheres.size(), 1u);
  EXPECT_TRUE(s0.horospheres[0].at_infinity());
  Scene s1 = m.enumerate_scene(1, w, 0.0);
  std::set<std::string> bases;
  for (const auto& h : s1.horospheres) bases.insert(h.base_string());
  EXPECT_EQ(bases, (std::set<std::string>{"inf", "0"}));
  EXPECT_TRUE(s1.find(Rational(0)).has_value());
  EXPECT_TRUE(s1.find(std::nullopt).has_value());
  EXPECT_FALSE(s1.find(Rational(1)).has_value());

  std::size_t prev = 0;
  for (int r = 0; r <= 4; ++r) {
    Scene s = m.enumerate_scene(r, w, 0.0);
    EXPECT_GE(s.horospheres.size(), prev);
    prev = s.horospheres.size();
    std::set<std::string> seen;
    for (const auto& h : s.horospheres) EXPECT_TRUE(seen.insert(h.base_string()).second);
  }
}

TEST(OmegaModel, ProjectPi) {
  OmegaModel m(2, 2.0);
  TreePoint t = TreePoint::vertex(m.tree().neighbors(m.tree().base())[1]);
  OmegaPoint q = m.project_pi({{1.5, 9.0}, t});
  EXPECT_EQ(q.plane.x, 1.5);
  EXPECT_DOUBLE_EQ(q.plane.y, 4.0);
  OmegaPoint qq = m.project_pi(q);
  EXPECT_EQ(qq.plane, q.plane);
  Horosphere s = make_horosphere(GroupElement());
  OmegaPoint r = m.project_onto(s, {{1.5, 9.0}, t});
  EXPECT_DOUBLE_EQ(r.plane.y, 4.0);
}

TEST(OmegaModel, ProjectOntoTangentHorosphere) {
  OmegaModel m(2, 2.0);
  Horosphere h = make_horosphere(generator_matrix(Generator::S, 2));
  TreePoint t0 = TreePoint::vertex(m.tree().base());
  OmegaPoint inside{{0.05, 0.2}, t0};
  ASSERT_TRUE(m.in_horoball(inside, h));
  OmegaPoint out = m.project_onto(h, inside);
  EXPECT_FALSE(m.in_horoball(out, h));
  // The image lies on the circle of diameter 1/2 tangent at 0.
  double r = 0.25;
  EXPECT_NEAR(std::hypot(out.plane.x, out.plane.y - r), r, 1e-9);
  // Both points lie on one geodesic ending at 0: a semicircle with (x^2 + y^2) / x constant.
  auto diam = [](HPoint z) { return (z.x * z.x + z.y * z.y) / z.x; };
  EXPECT_NEAR(diam(out.plane), diam(inside.plane), 1e-9);
}

TEST(OmegaModel, SceneHoroballsAreDisjoint) {
  std::mt19937_64 gen(13);
  for (int p : {2, 3}) {
    OmegaModel m(p, 2.0);
    Scene scene = m.enumerate_scene(4, SceneWindow{-8, 8, 3}, 0.0);
    int overlaps = 0;
    for (int i = 0; i < 20000; ++i) {
      OmegaPoint q{{unit(gen) * 8 - 4, std::exp(unit(gen) * 6 - 4)}, random_tree_point(m.tree(), gen, 2, i % 2)};
      int hits = 0;
      for (const auto& h : scene.horospheres) hits += m.in_horoball(q, h);
      overlaps += hits > 1;
    }
    EXPECT_EQ(overlaps, 0) << "p = " << p;
  }
}

TEST(OmegaModel, SceneJsonRoundTrip) {
  OmegaModel m(3, 2.5);
  Scene s = m.enumerate_scene(2, SceneWindow{-4, 4, 2}, 0.01);
  Scene r = scene_from_json(scene_to_json(s));
  EXPECT_EQ(r.p, s.p);
  EXPECT_EQ(r.B, s.B);
  EXPECT_EQ(r.radius, s.radius);
  EXPECT_EQ(r.min_diameter, s.min_diameter);
  ASSERT_EQ(r.horospheres.size(), s.horospheres.size());
  for (std::size_t i = 0; i < s.horospheres.size(); ++i) {
    EXPECT_EQ(r.horospheres[i].g, s.horospheres[i].g);
    EXPECT_EQ(r.horospheres[i].base, s.horospheres[i].base);
  }
  EXPECT_EQ(scene_to_json(r).dump(), scene_to_json(s).dump());
  nlohmann::json bad = scene_to_json(s);
  bad["horospheres"][0]["base"] = "17";
  EXPECT_THROW(scene_from_json(bad), std::exception);
}
