#include "omega/hyp_plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace omega {

namespace {

double polar_u(double theta) { return std::log(std::tan(theta / 2.0)); }
double theta_of_u(double u) { return 2.0 * std::atan(std::exp(u)); }

bool same_abscissa(double x1, double x2) {
  return std::abs(x1 - x2) <= 1e-13 * std::max({1.0, std::abs(x1), std::abs(x2)});
}

}  // namespace

bool HPoint::valid() const { return std::isfinite(x) && std::isfinite(y) && y > 0.0; }

double hyp_distance(HPoint p, HPoint q) {
  double dx = p.x - q.x, dy = p.y - q.y;
  double chord = std::sqrt(dx * dx + dy * dy);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y * q.y)));
}

Geodesic geodesic_between(HPoint p, HPoint q) {
  if (!p.valid() || !q.valid()) throw DegenerateInput("geodesic_between: invalid point");
  if (p == q) throw DegenerateInput("geodesic_between: coincident points");
  Geodesic g;
  g.start_ = p;
  g.end_ = q;
  if (same_abscissa(p.x, q.x)) {
    g.line = Vertical{p.x};
    g.u0_ = std::log(p.y);
    double u1 = std::log(q.y);
    g.dir_ = u1 >= g.u0_ ? 1.0 : -1.0;
    g.length_ = std::abs(u1 - g.u0_);
    return g;
  }
  double c = ((q.x * q.x + q.y * q.y) - (p.x * p.x + p.y * p.y)) / (2.0 * (q.x - p.x));
  double r = std::hypot(p.x - c, p.y);
  g.line = Arc{c, r};
  g.u0_ = polar_u(std::atan2(p.y, p.x - c));
  double u1 = polar_u(std::atan2(q.y, q.x - c));
  g.dir_ = u1 >= g.u0_ ? 1.0 : -1.0;
  g.length_ = std::abs(u1 - g.u0_);
  return g;
}

HPoint Geodesic::at(double s) const {
  if (s < -kGeomTol || s > length_ + kGeomTol)
    throw std::out_of_range("geodesic parameter " + std::to_string(s) + " outside [0, " +
                            std::to_string(length_) + "]");
  return at_clamped(s);
}

HPoint Geodesic::at_clamped(double s) const {
  s = std::clamp(s, 0.0, length_);
  if (s == 0.0) return start_;
  if (s == length_) return end_;
  double u = u0_ + dir_ * s;
  if (auto* v = std::get_if<Vertical>(&line)) return {v->x, std::exp(u)};
  const Arc& arc = std::get<Arc>(line);
  double theta = theta_of_u(u);
  return {arc.center + arc.radius * std::cos(theta), arc.radius * std::sin(theta)};
}

std::optional<double> Geodesic::param_at_x(double x) const {
  const Arc* arc = std::get_if<Arc>(&line);
  if (!arc) return std::nullopt;
  double ratio = (x - arc->center) / arc->radius;
  if (ratio < -1.0 || ratio > 1.0) return std::nullopt;
  double u = polar_u(std::acos(ratio));
  double s = dir_ * (u - u0_);
  if (s < -kGeomTol || s > length_ + kGeomTol) return std::nullopt;
  return std::clamp(s, 0.0, length_);
}

int Geodesic::x_direction() const {
  if (is_vertical()) return 0;
  return dir_ > 0 ? -1 : 1;
}

HPoint geodesic_point(const Geodesic& g, double s) { return g.at(s); }

HPoint vertical_project(HPoint p, AtInfinity h) { return {p.x, h.height}; }

double horocycle_arc_length(double x1, double x2, double height) {
  if (!(height > 0.0)) throw std::invalid_argument("horocycle height must be positive");
  return std::abs(x2 - x1) / height;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const {
  double det_ = det();
  return {d / det_, -b / det_, -c / det_, a / det_};
}

HPoint mobius_apply(const Mat2& m, HPoint p) {
  // (a z + b) / (c z + d) with z = x + i y, det m = 1.
  double re = m.c * p.x + m.d;
  double im = m.c * p.y;
  double den = re * re + im * im;
  double num_re = m.a * p.x + m.b;
  double num_im = m.a * p.y;
  return {(num_re * re + num_im * im) / den, (num_im * re - num_re * im) / den};
}

Horocircle mobius_apply(const Mat2& m, const Horocircle& h) {
  if (auto* inf = std::get_if<AtInfinity>(&h)) {
    if (m.c == 0.0) return AtInfinity{inf->height * m.a * m.a};
    return Tangent{m.a / m.c, 1.0 / (m.c * m.c * inf->height)};
  }
  const Tangent& t = std::get<Tangent>(h);
  // Tangent{beta, D} is the image of y = 1/D under z -> beta - 1/z.
  Mat2 to_tangent{t.base, -1.0, 1.0, 0.0};
  return mobius_apply(m * to_tangent, Horocircle{AtInfinity{1.0 / t.diameter}});
}

Mat2 normalize_pair(HPoint e1, HPoint e2) {
  if (e1 == e2) throw DegenerateInput("normalize_pair: coincident points");
  if (same_abscissa(e1.x, e2.x)) return Mat2::identity();
  Geodesic g = geodesic_between(e1, e2);
  const Arc& arc = std::get<Arc>(g.line);
  double sr = std::sqrt(arc.radius);
  Mat2 translate{1.0, -arc.center, 0.0, 1.0};
  Mat2 shrink{1.0 / sr, 0.0, 0.0, sr};
  double k = 1.0 / std::sqrt(2.0);
  Mat2 to_axis{k, k, -k, k};  // -1 -> 0, 1 -> infinity
  return to_axis * shrink * translate;
}

Reparam rho_reparam(HPoint z, HPoint e1, HPoint e2, double knot_step) {
  double gap = hyp_distance(e1, e2);
  if (gap > 1.0 + kGeomTol)
    throw PreconditionError("rho_reparam: endpoints " + std::to_string(gap) + " apart (> 1)");
  double len1 = hyp_distance(z, e1), len2 = hyp_distance(z, e2);
  if (len2 == 0.0) return Reparam({0.0}, {0.0});
  if (len1 == 0.0) return Reparam({0.0, len2}, {0.0, 0.0});
  if (e1 == e2) return Reparam::identity(len2);

  Mat2 phi = normalize_pair(e1, e2);
  HPoint zn = mobius_apply(phi, z), n1 = mobius_apply(phi, e1), n2 = mobius_apply(phi, e2);
  if (std::abs(zn.x - n1.x) <= 1e-12 * std::max(1.0, std::abs(zn.x))) {
    // z on the geodesic through e1, e2: both legs lie on one vertical line.
    return Reparam({0.0, len2}, {0.0, len1});
  }
  Geodesic chi1 = geodesic_between(zn, n1);
  Geodesic chi2 = geodesic_between(zn, n2);
  std::size_t steps = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(len2 / knot_step)));
  std::vector<double> knots, values;
  knots.reserve(steps + 1);
  values.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    double s = chi2.length() * static_cast<double>(i) / static_cast<double>(steps);
    double v;
    if (i == 0) {
      v = 0.0;
    } else if (i == steps) {
      v = chi1.length();
    } else {
      auto r = chi1.param_at_x(chi2.at(s).x);
      v = r ? *r : (values.empty() ? 0.0 : values.back());
    }
    if (!values.empty()) v = std::max(v, values.back());
    knots.push_back(s);
    values.push_back(v);
  }
  return Reparam(std::move(knots), std::move(values));
}

double vertical_width_f(double a, double r1, double r2, double t) {
  if (a < 0.0) throw PreconditionError("vertical_width_f: a must be >= 0");
  double num = r1 * r1 - (t - a) * (t - a);
  double den = r2 * r2 - (t + a) * (t + a);
  if (num <= 0.0 || den <= 0.0)
    throw std::out_of_range("vertical_width_f: abscissa outside one of the arcs");
  return 0.5 * std::log(num / den);
}

}  // namespace omega
