#pragma once

// Combing paths in Omega_p.  The raw path from the basepoint runs first
// along the tree geodesic with the plane coordinate frozen, then along the
// plane geodesic over the final tree point.  The adapted path replaces
// every stretch inside a scene horoball by its projection onto the
// horosphere (vertical in coordinates where the horosphere is sigma_inf).

#include "omega/hyp_plane.hpp"
#include "omega/omega_model.hpp"
#include "omega/reparam.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace omega {

inline constexpr double kDefaultStep = 0.05;

/// Scene horospheres with their real matrices, for fast containment tests
/// along paths.  Read-only after construction.
class HoroballIndex {
 public:
  HoroballIndex(const OmegaModel& model, const Scene& scene);

  const OmegaModel& model() const { return *model_; }
  const Scene& scene() const { return *scene_; }
  std::size_t size() const { return ginv_.size(); }

  /// a(g^{-1} v) for every horosphere g . sigma_inf of the scene.
  std::vector<int> exponents(const TreeVertex& v) const;
  /// Trace heights in normalized coordinates at the point (1-lambda) u + lambda w.
  std::vector<double> heights(const std::vector<int>& eu, const std::vector<int>& ew, double lambda) const;
  /// Index of the horoball whose interior contains z, or -1.
  int containing(HPoint z, const std::vector<double>& heights) const;
  /// Point of horosphere i reached from z along the geodesic to its base.
  HPoint project(std::size_t i, HPoint z, double height) const;
  /// Abscissa of z in the coordinates where horosphere i is based at infinity.
  double normalized_x(std::size_t i, HPoint z) const;

 private:
  const OmegaModel* model_;
  const Scene* scene_;
  std::vector<Mat2> g_, ginv_;
  std::vector<RatMatrix> ginv_exact_;
};

struct RawPath {
  OmegaPoint start;
  OmegaPoint target;
  std::vector<TreeVertex> tree_geodesic;  // start.tree ... target.tree
  std::optional<Geodesic> plane_leg;      // empty when the plane points agree
  double tree_length = 0.0;
  double plane_length = 0.0;

  double length() const { return tree_length + plane_length; }
};

/// Both tree points must be vertices.
RawPath build_raw_path(const OmegaModel& model, const OmegaPoint& start, const OmegaPoint& target);

struct PathSample {
  double r = 0.0;       // raw parameter along the whole path
  HPoint plane;         // adapted plane point
  double tree_s = 0.0;  // arclength along the tree geodesic
  int horosphere = -1;  // scene index the raw point was projected from
};

/// One maximal stretch of a raw leg inside a horoball.
struct Interaction {
  std::string base;
  int horosphere = -1;  // scene index
  int leg = 0;  // 1 tree leg, 2 plane leg
  double enter = 0.0;
  double exit = 0.0;
};

class CombingPath {
 public:
  CombingPath(const HoroballIndex& index, RawPath raw);

  const RawPath& raw() const { return raw_; }
  const HoroballIndex& index() const { return *index_; }
  double raw_length() const { return raw_.length(); }

  /// Adapted point for raw parameter r in [0, raw_length()].
  PathSample evaluate(double r) const;
  TreePoint tree_point(double tree_s) const;
  OmegaPoint point(const PathSample& s) const;

  std::vector<PathSample> samples;
  std::vector<Interaction> log;
  double step = kDefaultStep;

  /// Length of the sampled polyline.
  double length() const;
  bool is_constant() const { return raw_.length() == 0.0; }

 private:
  friend std::vector<PathSample> adapt_tree_leg(CombingPath&, double);
  friend std::vector<PathSample> adapt_plane_leg(CombingPath&, double);
  std::vector<double> heights_at(double tree_s) const;
  HPoint raw_plane(double r) const;
  int raw_horosphere(double r) const;
  std::vector<PathSample> sample_leg(int leg, double r0, double r1, double step);

  const HoroballIndex* index_;
  RawPath raw_;
  std::vector<std::vector<int>> exps_;  // per vertex of the tree geodesic
};

/// Samples of the adapted tree leg at spacing <= step; appends to the log.
std::vector<PathSample> adapt_tree_leg(CombingPath& path, double step);
/// Samples of the adapted plane leg at spacing <= step; appends to the log.
std::vector<PathSample> adapt_plane_leg(CombingPath& path, double step);

/// Adapted combing path from the model basepoint to `target`.  Throws
/// PreconditionError when the basepoint or the target lies inside a scene
/// horoball.
CombingPath combing_path(const HoroballIndex& index, const OmegaPoint& target, double step = kDefaultStep);

/// Length of the common initial segment of two tree geodesics from one root.
double common_prefix(const CombingPath& a, const CombingPath& b);
/// Omega distance between samples of two paths with the given common prefix.
double sample_distance(const PathSample& x, const PathSample& y, double prefix);

/// Tree-leg alignment: both tree legs advance together, then the shorter
/// one pauses.  Maps the parameter of leg a to that of leg b.
Reparam psi_tree_reparam(double tree_length_a, double tree_length_b);

/// Bookkeeping for the plane-phase alignment inside shared horoballs.
struct OmegaCases {
  int windows = 0;          // horoballs entered by both plane legs
  int entry_case1 = 0;      // first path pauses before the window
  int entry_case2 = 0;      // second path pauses before the window
  int exit_case3 = 0;       // second path pauses after the window
  int exit_case4 = 0;       // first path pauses after the window
  int fallbacks = 0;        // windows handled by the vertical alignment alone
};

/// Coupling of the raw plane legs of a and b (raw plane parameters): the
/// vertical-fibre alignment outside shared horoballs and matched
/// normalized abscissae inside them.
Coupling omega_coupling(const CombingPath& a, const CombingPath& b, OmegaCases* cases = nullptr);
/// The same coupling as a pair of reparametrizations.
std::pair<Reparam, Reparam> omega_reparams(const CombingPath& a, const CombingPath& b, OmegaCases* cases = nullptr);

struct WidthReport {
  OmegaPoint alpha1, alpha2;
  double measured = 0.0;  // max distance along the constructed coupling
  double oracle = 0.0;    // discrete Frechet distance of the sampled paths
  double bound = 0.0;     // max{2 log p, e^2 + 2}
  double slack = 0.0;     // 2 step
  bool one_plane_clean = false;  // same tree point, no horoball interaction
  std::size_t samples1 = 0, samples2 = 0;
  OmegaCases cases;
};

double width_bound(int p);

/// Width of two constructed combing paths.  Throws PreconditionError when
/// their targets are more than 1 apart.
WidthReport async_width(const CombingPath& a, const CombingPath& b);
/// Builds both combing paths first.
WidthReport async_width(const HoroballIndex& index, const OmegaPoint& alpha1, const OmegaPoint& alpha2,
                        double step = kDefaultStep);

/// Rows: leg, s, x, y, tree_edge, lambda.
void write_path_csv(std::ostream& os, const CombingPath& path);

}  // namespace omega
