#include "omega/combing.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace omega;

namespace {

struct Fixture {
  OmegaModel model{2, 2.0};
  Scene scene = model.enumerate_scene(3, SceneWindow{-16, 16, 4}, 0.0);
  HoroballIndex index{model, scene};

  OmegaPoint at(double x, double y, TreeVertex v) const { return {HPoint{x, y}, TreePoint::vertex(v)}; }
  TreeVertex t0() const { return model.tree().base(); }
  int sigma_inf() const { return static_cast<int>(*scene.find(std::nullopt)); }

  bool contained(const CombingPath& path) const {
    for (const PathSample& s : path.samples) {
      OmegaPoint q = path.point(s);
      for (const Horosphere& h : scene.horospheres)
        if (model.in_horoball(q, h)) return false;
    }
    return true;
  }
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST(RawPath, LengthsAdd) {
  const Fixture& f = fx();
  RawPath flat = build_raw_path(f.model, f.model.basepoint(), f.at(3, 1.5, f.t0()));
  EXPECT_EQ(flat.tree_length, 0.0);
  EXPECT_NEAR(flat.plane_length, hyp_distance({0, 1}, {3, 1.5}), 1e-12);
  EXPECT_EQ(flat.tree_geodesic.size(), 1u);

  RawPath up = build_raw_path(f.model, f.model.basepoint(), f.at(0, std::exp(0.7), TreeVertex{2, 0}));
  EXPECT_DOUBLE_EQ(up.tree_length, 1.0);
  EXPECT_NEAR(up.plane_length, 0.7, 1e-12);
  EXPECT_NEAR(up.length(), f.model.distance(up.start, up.target), 1e-12);

  OmegaPoint mid{{0, 1}, TreePoint{f.t0(), TreeVertex{1, 0}, 0.5}};
  EXPECT_THROW(build_raw_path(f.model, f.model.basepoint(), mid), PreconditionError);
}

TEST(CombingPath, ConstantPath) {
  const Fixture& f = fx();
  CombingPath path = combing_path(f.index, f.model.basepoint());
  EXPECT_TRUE(path.is_constant());
  ASSERT_FALSE(path.samples.empty());
  for (const PathSample& s : path.samples) EXPECT_EQ(s.plane, (HPoint{0, 1}));
  EXPECT_EQ(path.length(), 0.0);
}

TEST(CombingPath, SamplesAreDenseAndEndAtTarget) {
  const Fixture& f = fx();
  OmegaPoint target = f.at(-5, 0.7, TreeVertex{1, 1});
  CombingPath path = combing_path(f.index, target, 0.05);
  ASSERT_GE(path.samples.size(), 2u);
  double prefix = path.raw().tree_length;
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    EXPECT_LE(sample_distance(path.samples[i - 1], path.samples[i], prefix), 0.05 + 1e-9);
    EXPECT_GE(path.samples[i].r, path.samples[i - 1].r);
  }
  EXPECT_EQ(path.samples.front().plane, (HPoint{0, 1}));
  EXPECT_NEAR(path.samples.back().plane.x, -5, 1e-9);
  EXPECT_NEAR(path.samples.back().plane.y, 0.7, 1e-9);
  EXPECT_TRUE(f.contained(path));
}

TEST(CombingPath, TreeLegFollowsSigmaInf) {
  const Fixture& f = fx();
  // Going down the tree from t0 with the plane point frozen at (0, 1), the
  // trace of sigma_inf drops below y = 1 after one edge.
  OmegaPoint target = f.at(0, 0.1, TreeVertex{-3, 0});
  CombingPath path = combing_path(f.index, target, 0.05);
  int on_sigma = 0;
  for (const PathSample& s : path.samples) {
    if (s.horosphere != f.sigma_inf()) continue;
    ++on_sigma;
    EXPECT_NEAR(s.plane.y, f.model.sigma_inf_height(path.tree_point(s.tree_s)), 1e-12);
    EXPECT_EQ(s.plane.x, 0.0);
  }
  EXPECT_GT(on_sigma, 0);
  bool logged = false;
  for (const Interaction& i : path.log) logged = logged || (i.base == "inf" && i.leg == 1);
  EXPECT_TRUE(logged);
  EXPECT_TRUE(f.contained(path));
}

TEST(CombingPath, PlaneLegIsHorocyclicInsideSigmaInf) {
  const Fixture& f = fx();
  OmegaPoint target = f.at(9, 1, f.t0());
  CombingPath path = combing_path(f.index, target, 0.05);
  double last_x = -1e9;
  int on_sigma = 0;
  for (const PathSample& s : path.samples) {
    if (s.horosphere != f.sigma_inf()) continue;
    ++on_sigma;
    EXPECT_EQ(s.plane.y, 2.0);
    EXPECT_GT(s.plane.x, last_x);
    last_x = s.plane.x;
  }
  EXPECT_GT(on_sigma, 10);
  bool logged = false;
  for (const Interaction& i : path.log)
    if (i.base == "inf" && i.leg == 2) {
      logged = true;
      EXPECT_LT(i.enter, i.exit);
      HPoint e = path.raw().plane_leg->at(i.enter);
      EXPECT_NEAR(e.y, 2.0, 1e-9);
    }
  EXPECT_TRUE(logged);
  EXPECT_TRUE(f.contained(path));
  // The adapted path is longer than the raw one but stays within the
  // horocycle estimate for the detour.
  EXPECT_GT(path.length(), path.raw().length());
}

TEST(CombingPath, TargetInsideHoroballRejected) {
  const Fixture& f = fx();
  EXPECT_THROW(combing_path(f.index, f.at(0, 5, f.t0())), PreconditionError);
}

TEST(CombingPath, CsvHeader) {
  const Fixture& f = fx();
  CombingPath path = combing_path(f.index, f.at(1, 1, TreeVertex{1, 0}));
  std::ostringstream os;
  write_path_csv(os, path);
  std::string first = os.str().substr(0, os.str().find('\n'));
  EXPECT_EQ(first, "leg,s,x,y,tree_edge,lambda");
}

TEST(Alignment, CommonPrefixAndSampleDistance) {
  const Fixture& f = fx();
  CombingPath a = combing_path(f.index, f.at(0.3, 3, TreeVertex{2, 0}));
  CombingPath b = combing_path(f.index, f.at(0.3, 3, TreeVertex{2, 2}));
  CombingPath c = combing_path(f.index, f.at(0.3, 3, TreeVertex{1, 1}));
  EXPECT_DOUBLE_EQ(common_prefix(a, b), 0.5);
  EXPECT_DOUBLE_EQ(common_prefix(a, a), 1.0);
  EXPECT_DOUBLE_EQ(common_prefix(a, c), 0.0);
  PathSample x{0, {0, 1}, 0.75, -1}, y{0, {0, 1}, 1.0, -1};
  EXPECT_DOUBLE_EQ(sample_distance(x, y, 0.5), 0.75);
  EXPECT_DOUBLE_EQ(sample_distance(x, y, 1.0), 0.25);
  PathSample z{0, {0, std::exp(1.0)}, 0.25, -1};
  EXPECT_NEAR(sample_distance(x, z, 0.5), 1.5, 1e-12);
}

TEST(Alignment, PsiTree) {
  Reparam psi = psi_tree_reparam(2.0, 1.0);
  EXPECT_DOUBLE_EQ(psi(0.5), 0.5);
  EXPECT_DOUBLE_EQ(psi(1.5), 1.0);
  EXPECT_TRUE(psi.satisfies_contract());
  Reparam id = psi_tree_reparam(1.5, 1.5);
  for (double t : {0.0, 0.3, 1.5}) EXPECT_DOUBLE_EQ(id(t), t);
}

TEST(Alignment, ReparamsSatisfyContract) {
  const Fixture& f = fx();
  CombingPath a = combing_path(f.index, f.at(9, 1, f.t0()));
  CombingPath b = combing_path(f.index, f.at(9.5, 1.2, f.t0()));
  auto [ra, rb] = omega_reparams(a, b);
  EXPECT_TRUE(ra.satisfies_contract());
  EXPECT_TRUE(rb.satisfies_contract());
  EXPECT_NEAR(ra.range_end(), a.raw().plane_length, 1e-9);
  EXPECT_NEAR(rb.range_end(), b.raw().plane_length, 1e-9);
  EXPECT_TRUE(omega_coupling(a, b).is_monotone());
}

TEST(Alignment, SharedWindowCouplesCoincidentPoints) {
  const Fixture& f = fx();
  CombingPath a = combing_path(f.index, f.at(10, 1, f.t0()));
  CombingPath b = combing_path(f.index, f.at(10, 1.5, f.t0()));
  OmegaCases cases;
  Coupling c = omega_coupling(a, b, &cases);
  EXPECT_GE(cases.windows, 1);
  int inside = 0;
  for (auto [u, w] : c.points) {
    PathSample x = a.evaluate(a.raw().tree_length + u), y = b.evaluate(b.raw().tree_length + w);
    if (x.horosphere != f.sigma_inf() || y.horosphere != f.sigma_inf()) continue;
    ++inside;
    EXPECT_LT(hyp_distance(x.plane, y.plane), 1e-9);
  }
  EXPECT_GT(inside, 0);
}

TEST(AsyncWidth, EqualTargetsGiveZero) {
  const Fixture& f = fx();
  OmegaPoint q = f.at(-3, 0.8, TreeVertex{1, 0});
  WidthReport r = async_width(f.index, q, q);
  EXPECT_EQ(r.oracle, 0.0);
  EXPECT_NEAR(r.measured, 0.0, 1e-12);
}

TEST(AsyncWidth, CleanPairStaysWithinOne) {
  const Fixture& f = fx();
  WidthReport r = async_width(f.index, f.at(-0.3, 0.6, f.t0()), f.at(0.2, 0.6, f.t0()), 0.05);
  ASSERT_TRUE(r.one_plane_clean);
  EXPECT_LE(r.oracle, 1.0 + r.slack);
  EXPECT_LE(r.measured, 1.0 + r.slack);
}

TEST(AsyncWidth, BoundHoldsOnHandPickedPairs) {
  const Fixture& f = fx();
  std::vector<std::pair<OmegaPoint, OmegaPoint>> pairs{
      {f.at(10, 1, f.t0()), f.at(10, 1.5, f.t0())},
      {f.at(0, 0.1, TreeVertex{-3, 0}), f.at(0.05, 0.1, TreeVertex{-3, 0})},
      {f.at(5, 0.5, TreeVertex{2, 0}), f.at(5, 0.5, TreeVertex{1, 0})},
      {f.at(-7, 1.5, TreeVertex{1, 1}), f.at(-7.5, 1.5, TreeVertex{1, 1})},
  };
  for (const auto& [p, q] : pairs) {
    WidthReport r = async_width(f.index, p, q, 0.05);
    EXPECT_DOUBLE_EQ(r.bound, std::exp(2.0) + 2);
    EXPECT_DOUBLE_EQ(r.slack, 0.1);
    EXPECT_LE(r.oracle, r.bound + r.slack);
    EXPECT_LE(r.oracle, r.measured + r.slack);
  }
}

TEST(AsyncWidth, FarTargetsRejected) {
  const Fixture& f = fx();
  EXPECT_THROW(async_width(f.index, f.at(-3, 1, f.t0()), f.at(3, 1, f.t0())), PreconditionError);
}

TEST(AsyncWidth, Bound) {
  EXPECT_DOUBLE_EQ(width_bound(2), std::exp(2.0) + 2);
  EXPECT_DOUBLE_EQ(width_bound(1009), 2 * std::log(1009.0));
}
