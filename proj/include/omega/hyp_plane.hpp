#pragma once

// Geometry of the upper half-plane {(x,y) : y > 0} with metric
// (dx^2 + dy^2) / y^2.  Everything here is double precision; exactness
// lives in the group arithmetic.

#include "omega/reparam.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <variant>

namespace omega {

/// Shared geometric tolerance.
inline constexpr double kGeomTol = 1e-9;

class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HPoint {
  double x = 0.0;
  double y = 1.0;

  bool valid() const;
  friend bool operator==(const HPoint&, const HPoint&) = default;
};

double hyp_distance(HPoint p, HPoint q);

struct Vertical {
  double x;
};
struct Arc {
  double center;
  double radius;
};

/// A geodesic segment with a unit-speed parametrization s in [0, length()].
class Geodesic {
 public:
  std::variant<Vertical, Arc> line;

  HPoint start() const { return start_; }
  HPoint end() const { return end_; }
  double length() const { return length_; }
  bool is_vertical() const { return std::holds_alternative<Vertical>(line); }

  /// Unit-speed point; throws std::out_of_range outside [0, length].
  HPoint at(double s) const;
  /// Same as at() but clamps s into range.
  HPoint at_clamped(double s) const;
  /// Arclength parameter of the point with abscissa x (arcs only).
  std::optional<double> param_at_x(double x) const;
  /// Sign of dx/ds along an arc (+1 or -1); 0 for vertical lines.
  int x_direction() const;

 private:
  friend Geodesic geodesic_between(HPoint p, HPoint q);
  HPoint start_, end_;
  double length_ = 0.0;
  // For arcs: u = ln tan(theta/2) at the start, theta the polar angle about
  // the centre.  For vertical lines: ln y at the start.
  double u0_ = 0.0;
  double dir_ = 1.0;
};

/// Unique geodesic from p to q.  Throws DegenerateInput when p == q.
Geodesic geodesic_between(HPoint p, HPoint q);
HPoint geodesic_point(const Geodesic& g, double s);

struct AtInfinity {
  double height;
};
struct Tangent {
  double base;
  double diameter;
};
using Horocircle = std::variant<AtInfinity, Tangent>;

HPoint vertical_project(HPoint p, AtInfinity h);
double horocycle_arc_length(double x1, double x2, double height);

/// Real 2x2 matrix acting by Moebius transformations.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const;
  Mat2 inverse() const;
  static Mat2 identity() { return {}; }
};

HPoint mobius_apply(const Mat2& m, HPoint p);
/// Image of a horocircle.  Returns AtInfinity when the image is based at
/// infinity.
Horocircle mobius_apply(const Mat2& m, const Horocircle& h);

/// Isometry phi with phi(e1), phi(e2) on one vertical line.
Mat2 normalize_pair(HPoint e1, HPoint e2);

/// Vertical-fibre alignment between chi1 = [z, e1] and chi2 = [z, e2]:
/// a strictly increasing map from the parameters of chi2 onto those of
/// chi1 such that chi2(s) and chi1(rho(s)) lie on a common vertical
/// geodesic after normalization.  Requires d(e1, e2) <= 1.
Reparam rho_reparam(HPoint z, HPoint e1, HPoint e2, double knot_step = 1e-3);

/// Hyperbolic distance along the vertical fibre at abscissa t between the
/// circles (x-a)^2+y^2=R1^2 and (x+a)^2+y^2=R2^2.
double vertical_width_f(double a, double r1, double r2, double t);

}  // namespace omega
