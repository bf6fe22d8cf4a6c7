#include "omega/omega_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace omega {

namespace {

RatMatrix inverse_entries(const GroupElement& g) { return g.inverse().entries(); }

}  // namespace

std::string Horosphere::base_string() const { return base ? to_string(*base) : "inf"; }

Horosphere make_horosphere(const GroupElement& g) {
  Horosphere s{g, std::nullopt};
  if (g.c() != 0) s.base = g.a() / g.c();
  return s;
}

std::optional<std::size_t> Scene::find(const std::optional<Rational>& base) const {
  for (std::size_t i = 0; i < horospheres.size(); ++i)
    if (horospheres[i].base == base) return i;
  return std::nullopt;
}

OmegaModel::OmegaModel(int p, double B) : B_(B), tree_(p) {
  if (!(B > 0.0) || !std::isfinite(B)) throw std::out_of_range("calibration B must be positive");
}

OmegaPoint OmegaModel::basepoint() const { return {HPoint{0.0, 1.0}, TreePoint::vertex(tree_.base())}; }

double OmegaModel::distance(const OmegaPoint& q1, const OmegaPoint& q2) const {
  return hyp_distance(q1.plane, q2.plane) + tree_.point_distance(q1.tree, q2.tree);
}

double OmegaModel::sigma_inf_height(const TreePoint& t) const {
  return B_ * std::pow(static_cast<double>(prime()), 2.0 * height(t));
}

double OmegaModel::normalized_height(const Horosphere& s, const TreePoint& t) const {
  if (s.g.is_identity()) return sigma_inf_height(t);
  RatMatrix inv = inverse_entries(s.g);
  double a_from = tree_.exponent_after(inv, t.from);
  double a_to = t.from == t.to ? a_from : tree_.exponent_after(inv, t.to);
  double a = (1.0 - t.lambda) * a_from + t.lambda * a_to;
  return B_ * std::pow(static_cast<double>(prime()), a);
}

bool OmegaModel::in_horoball(const OmegaPoint& q, const Horosphere& s) const {
  double H = normalized_height(s, q.tree);
  HPoint w = s.g.is_identity() ? q.plane : mobius_apply(s.g.inverse().to_real(), q.plane);
  return w.y > H;
}

Horocircle OmegaModel::horocircle_in_plane(const Horosphere& s, const TreePoint& t) const {
  return mobius_apply(s.g.to_real(), Horocircle{AtInfinity{normalized_height(s, t)}});
}

OmegaPoint OmegaModel::project_pi(const OmegaPoint& q) const {
  return {HPoint{q.plane.x, sigma_inf_height(q.tree)}, q.tree};
}

OmegaPoint OmegaModel::project_onto(const Horosphere& s, const OmegaPoint& q) const {
  if (s.g.is_identity()) return project_pi(q);
  double H = normalized_height(s, q.tree);
  Mat2 g = s.g.to_real();
  HPoint w = mobius_apply(g.inverse(), q.plane);
  w.y = H * (1.0 - kBoundaryNudge);
  return {mobius_apply(g, w), q.tree};
}

OmegaPoint OmegaModel::eta_act(const GroupElement& g, const OmegaPoint& q) const {
  return {mobius_apply(g.to_real(), q.plane), tree_.act(g.entries(), q.tree)};
}

double OmegaModel::max_window_diameter(const Horosphere& s, const SceneWindow& window) const {
  if (s.at_infinity()) return std::numeric_limits<double>::infinity();
  double c = to_double(s.g.c());
  int a0 = tree_.exponent_after(inverse_entries(s.g), tree_.base());
  double H = B_ * std::pow(static_cast<double>(prime()), a0 - window.tree_radius);
  return 1.0 / (c * c * H);
}

Scene OmegaModel::enumerate_scene(int word_radius, const SceneWindow& window, double min_diameter) const {
  if (word_radius < 0) throw std::out_of_range("scene radius must be non-negative");
  if (!(window.x_min < window.x_max) || window.tree_radius < 0)
    throw std::out_of_range("invalid scene window");
  Scene scene;
  scene.p = prime();
  scene.B = B_;
  scene.radius = word_radius;
  scene.window = window;
  scene.min_diameter = min_diameter;
  std::unordered_set<std::string> seen;
  for (const BallEntry& e : group_ball(prime(), word_radius)) {
    Horosphere s = make_horosphere(e.element);
    if (!seen.insert(s.base_string()).second) continue;
    if (!s.at_infinity()) {
      double D = max_window_diameter(s, window);
      if (D < min_diameter) continue;
      double x = to_double(*s.base);
      if (x + D / 2 < window.x_min || x - D / 2 > window.x_max) continue;
    }
    scene.horospheres.push_back(std::move(s));
  }
  return scene;
}

double omega_distance(const OmegaModel& m, const OmegaPoint& q1, const OmegaPoint& q2) {
  return m.distance(q1, q2);
}

OmegaPoint eta_act(const OmegaModel& m, const GroupElement& g, const OmegaPoint& q) {
  return m.eta_act(g, q);
}

nlohmann::json scene_to_json(const Scene& s) {
  nlohmann::json hs = nlohmann::json::array();
  for (const Horosphere& h : s.horospheres)
    hs.push_back({{"matrix", to_json(h.g)}, {"base", h.base_string()}});
  return {{"p", s.p},
          {"B", s.B},
          {"radius", s.radius},
          {"window", {{"x_min", s.window.x_min}, {"x_max", s.window.x_max}, {"tree_radius", s.window.tree_radius}}},
          {"min_diameter", s.min_diameter},
          {"horospheres", hs}};
}

Scene scene_from_json(const nlohmann::json& j) {
  Scene s;
  s.p = j.at("p").get<int>();
  s.B = j.at("B").get<double>();
  s.radius = j.at("radius").get<int>();
  if (j.contains("window")) {
    const auto& w = j.at("window");
    s.window = {w.at("x_min").get<double>(), w.at("x_max").get<double>(), w.at("tree_radius").get<int>()};
  }
  s.min_diameter = j.value("min_diameter", 0.0);
  for (const auto& h : j.at("horospheres")) {
    GroupElement g = group_element_from_json(h.at("matrix"));
    Horosphere hs = make_horosphere(g);
    if (hs.base_string() != h.at("base").get<std::string>())
      throw std::invalid_argument("scene record base does not match its matrix");
    s.horospheres.push_back(std::move(hs));
  }
  return s;
}

}  // namespace omega
