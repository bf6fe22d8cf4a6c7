#pragma once

// The space Omega_p: H^2 x T_p with the open horoballs of the orbit of the
// calibrated horosphere sigma_inf removed.  Distances use the L1 product
// metric.

#include "omega/hyp_plane.hpp"
#include "omega/padic_tree.hpp"
#include "omega/psl2.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace omega {

struct OmegaPoint {
  HPoint plane;
  TreePoint tree;
};

/// The horosphere g . sigma_inf, based at g(infinity).
struct Horosphere {
  GroupElement g;
  std::optional<Rational> base;  // nullopt means infinity

  bool at_infinity() const { return !base.has_value(); }
  std::string base_string() const;
};

Horosphere make_horosphere(const GroupElement& g);

struct SceneWindow {
  double x_min = -16.0;
  double x_max = 16.0;
  int tree_radius = 4;  // edges around the base vertex
};

struct Scene {
  int p = 2;
  double B = 2.0;
  int radius = 0;
  SceneWindow window;
  double min_diameter = 0.0;
  std::vector<Horosphere> horospheres;

  /// Index of the horosphere with this base, if present.
  std::optional<std::size_t> find(const std::optional<Rational>& base) const;
};

/// Relative amount by which projected points are pushed off a horosphere,
/// so that containment tests at samples hold with a strict inequality.
inline constexpr double kBoundaryNudge = 1e-12;

class OmegaModel {
 public:
  OmegaModel(int p, double B = 2.0);

  int prime() const { return tree_.prime(); }
  double calibration() const { return B_; }
  const BruhatTitsTree& tree() const { return tree_; }

  OmegaPoint basepoint() const;

  double distance(const OmegaPoint& q1, const OmegaPoint& q2) const;

  /// y-coordinate of sigma_inf over t: B p^{2 h(t)}.
  double sigma_inf_height(const TreePoint& t) const;
  /// Height of sigma_inf over g^{-1} t, i.e. the trace of sigma in the
  /// coordinates where sigma is based at infinity.
  double normalized_height(const Horosphere& s, const TreePoint& t) const;

  bool in_horoball(const OmegaPoint& q, const Horosphere& s) const;
  Horocircle horocircle_in_plane(const Horosphere& s, const TreePoint& t) const;

  /// pi(x, y, t) = (x, p^{2h(t)} B, t).
  OmegaPoint project_pi(const OmegaPoint& q) const;
  /// Projection onto s along the geodesics ending at its base; vertical
  /// projection when s = sigma_inf.
  OmegaPoint project_onto(const Horosphere& s, const OmegaPoint& q) const;

  OmegaPoint eta_act(const GroupElement& g, const OmegaPoint& q) const;

  /// Horospheres g . sigma_inf for g in the word ball, one per base point,
  /// filtered to those whose trace over the window reaches the diameter.
  Scene enumerate_scene(int word_radius, const SceneWindow& window, double min_diameter) const;

  /// Largest euclidean diameter of s's trace over the window's tree ball
  /// (infinite for sigma_inf).
  double max_window_diameter(const Horosphere& s, const SceneWindow& window) const;

 private:
  double B_;
  BruhatTitsTree tree_;
};

/// Free-function forms.
double omega_distance(const OmegaModel& m, const OmegaPoint& q1, const OmegaPoint& q2);
OmegaPoint eta_act(const OmegaModel& m, const GroupElement& g, const OmegaPoint& q);

nlohmann::json scene_to_json(const Scene& s);
Scene scene_from_json(const nlohmann::json& j);

}  // namespace omega
