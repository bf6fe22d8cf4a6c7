#include "omega/combing.hpp"

#include "omega/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace omega {

// ---------------------------------------------------------------------------
// HoroballIndex

HoroballIndex::HoroballIndex(const OmegaModel& model, const Scene& scene) : model_(&model), scene_(&scene) {
  if (scene.p != model.prime()) throw std::invalid_argument("scene prime does not match the model");
  for (const Horosphere& s : scene.horospheres) {
    GroupElement inv = s.g.inverse();
    g_.push_back(s.g.to_real());
    ginv_.push_back(inv.to_real());
    ginv_exact_.push_back(inv.entries());
  }
}

std::vector<int> HoroballIndex::exponents(const TreeVertex& v) const {
  std::vector<int> e;
  e.reserve(ginv_exact_.size());
  for (const RatMatrix& m : ginv_exact_) e.push_back(model_->tree().exponent_after(m, v));
  return e;
}

std::vector<double> HoroballIndex::heights(const std::vector<int>& eu, const std::vector<int>& ew,
                                           double lambda) const {
  double p = model_->prime(), B = model_->calibration();
  std::vector<double> h(eu.size());
  for (std::size_t i = 0; i < eu.size(); ++i) {
    double a = lambda == 0.0 ? eu[i] : (1.0 - lambda) * eu[i] + lambda * ew[i];
    h[i] = B * std::pow(p, a);
  }
  return h;
}

int HoroballIndex::containing(HPoint z, const std::vector<double>& heights) const {
  for (std::size_t i = 0; i < ginv_.size(); ++i) {
    HPoint w = scene_->horospheres[i].at_infinity() ? z : mobius_apply(ginv_[i], z);
    if (w.y > heights[i]) return static_cast<int>(i);
  }
  return -1;
}

HPoint HoroballIndex::project(std::size_t i, HPoint z, double height) const {
  if (scene_->horospheres[i].at_infinity()) return {z.x, height};
  HPoint w = mobius_apply(ginv_[i], z);
  w.y = height * (1.0 - kBoundaryNudge);
  return mobius_apply(g_[i], w);
}

double HoroballIndex::normalized_x(std::size_t i, HPoint z) const {
  return scene_->horospheres[i].at_infinity() ? z.x : mobius_apply(ginv_[i], z).x;
}

// ---------------------------------------------------------------------------
// Raw and adapted paths

RawPath build_raw_path(const OmegaModel& model, const OmegaPoint& start, const OmegaPoint& target) {
  if (!start.tree.is_vertex() || !target.tree.is_vertex())
    throw PreconditionError("combing endpoints must sit over tree vertices");
  if (!start.plane.valid() || !target.plane.valid()) throw DegenerateInput("plane point must have y > 0");
  RawPath raw{start, target, {}, std::nullopt, 0.0, 0.0};
  const BruhatTitsTree& tree = model.tree();
  raw.tree_geodesic = tree.geodesic(start.tree.as_vertex(), target.tree.as_vertex());
  raw.tree_length = static_cast<double>(raw.tree_geodesic.size() - 1) * kEdgeLength;
  if (!(start.plane == target.plane)) {
    raw.plane_leg = geodesic_between(start.plane, target.plane);
    raw.plane_length = raw.plane_leg->length();
  }
  return raw;
}

CombingPath::CombingPath(const HoroballIndex& index, RawPath raw) : index_(&index), raw_(std::move(raw)) {
  exps_.reserve(raw_.tree_geodesic.size());
  for (const TreeVertex& v : raw_.tree_geodesic) exps_.push_back(index.exponents(v));
}

TreePoint CombingPath::tree_point(double tree_s) const {
  std::size_t n = raw_.tree_geodesic.size();
  double q = std::clamp(tree_s, 0.0, raw_.tree_length) / kEdgeLength;
  std::size_t k = std::min(static_cast<std::size_t>(q), n - 1);
  double lambda = q - static_cast<double>(k);
  if (k + 1 >= n || lambda <= 0.0) return TreePoint::vertex(raw_.tree_geodesic[k]);
  return TreePoint{raw_.tree_geodesic[k], raw_.tree_geodesic[k + 1], lambda};
}

std::vector<double> CombingPath::heights_at(double tree_s) const {
  std::size_t n = exps_.size();
  double q = std::clamp(tree_s, 0.0, raw_.tree_length) / kEdgeLength;
  std::size_t k = std::min(static_cast<std::size_t>(q), n - 1);
  double lambda = q - static_cast<double>(k);
  if (k + 1 >= n || lambda <= 0.0) return index_->heights(exps_[k], exps_[k], 0.0);
  return index_->heights(exps_[k], exps_[k + 1], lambda);
}

HPoint CombingPath::raw_plane(double r) const {
  if (r <= raw_.tree_length || !raw_.plane_leg) return raw_.start.plane;
  return raw_.plane_leg->at_clamped(r - raw_.tree_length);
}

int CombingPath::raw_horosphere(double r) const {
  return index_->containing(raw_plane(r), heights_at(std::min(r, raw_.tree_length)));
}

PathSample CombingPath::evaluate(double r) const {
  r = std::clamp(r, 0.0, raw_.length());
  PathSample s;
  s.r = r;
  s.tree_s = std::min(r, raw_.tree_length);
  HPoint z = raw_plane(r);
  std::vector<double> h = heights_at(s.tree_s);
  s.horosphere = index_->containing(z, h);
  s.plane = s.horosphere < 0 ? z : index_->project(static_cast<std::size_t>(s.horosphere), z, h[s.horosphere]);
  return s;
}

OmegaPoint CombingPath::point(const PathSample& s) const { return {s.plane, tree_point(s.tree_s)}; }

namespace {

double same_path_distance(const PathSample& a, const PathSample& b) {
  return hyp_distance(a.plane, b.plane) + std::abs(a.tree_s - b.tree_s);
}

constexpr double kMinParamGap = 1e-12;

}  // namespace

std::vector<PathSample> CombingPath::sample_leg(int leg, double r0, double r1, double step) {
  std::vector<PathSample> out{evaluate(r0)};
  if (r1 > r0) {
    std::vector<PathSample> stack{evaluate(r1)};
    while (!stack.empty()) {
      const PathSample& a = out.back();
      PathSample b = stack.back();
      if (same_path_distance(a, b) <= step || b.r - a.r < kMinParamGap) {
        out.push_back(b);
        stack.pop_back();
      } else {
        stack.push_back(evaluate(0.5 * (a.r + b.r)));
      }
    }
  }
  // Maximal runs inside one horoball, with boundaries refined by bisection.
  double offset = leg == 1 ? 0.0 : raw_.tree_length;
  auto refine = [&](double inside, double outside, int h) {
    for (int it = 0; it < 60 && std::abs(inside - outside) > kMinParamGap; ++it) {
      double mid = 0.5 * (inside + outside);
      (raw_horosphere(mid) == h ? inside : outside) = mid;
    }
    return inside;
  };
  for (std::size_t i = 0; i < out.size();) {
    int h = out[i].horosphere;
    if (h < 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < out.size() && out[j + 1].horosphere == h) ++j;
    double enter = i == 0 ? out[i].r : refine(out[i].r, out[i - 1].r, h);
    double exit = j + 1 == out.size() ? out[j].r : refine(out[j].r, out[j + 1].r, h);
    log.push_back({index_->scene().horospheres[h].base_string(), h, leg, enter - offset, exit - offset});
    i = j + 1;
  }
  return out;
}

std::vector<PathSample> adapt_tree_leg(CombingPath& path, double step) {
  return path.sample_leg(1, 0.0, path.raw_.tree_length, step);
}

std::vector<PathSample> adapt_plane_leg(CombingPath& path, double step) {
  return path.sample_leg(2, path.raw_.tree_length, path.raw_.length(), step);
}

double CombingPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) total += same_path_distance(samples[i - 1], samples[i]);
  return total;
}

CombingPath combing_path(const HoroballIndex& index, const OmegaPoint& target, double step) {
  if (!(step > 0.0)) throw std::out_of_range("sample step must be positive");
  const OmegaModel& model = index.model();
  CombingPath path(index, build_raw_path(model, model.basepoint(), target));
  path.step = step;
  if (path.evaluate(0.0).horosphere >= 0) throw PreconditionError("basepoint lies inside a scene horoball");
  if (path.evaluate(path.raw_length()).horosphere >= 0)
    throw PreconditionError("target lies inside a scene horoball");
  path.samples = adapt_tree_leg(path, step);
  std::vector<PathSample> leg2 = adapt_plane_leg(path, step);
  path.samples.insert(path.samples.end(), leg2.begin() + 1, leg2.end());
  return path;
}

double common_prefix(const CombingPath& a, const CombingPath& b) {
  const auto& x = a.raw().tree_geodesic;
  const auto& y = b.raw().tree_geodesic;
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  return k == 0 ? 0.0 : static_cast<double>(k - 1) * kEdgeLength;
}

double sample_distance(const PathSample& x, const PathSample& y, double prefix) {
  double s1 = x.tree_s, s2 = y.tree_s;
  double tree = (s1 <= prefix || s2 <= prefix) ? std::abs(s1 - s2) : s1 + s2 - 2.0 * prefix;
  return hyp_distance(x.plane, y.plane) + tree;
}

// ---------------------------------------------------------------------------
// Reparametrizations

Reparam psi_tree_reparam(double tree_length_a, double tree_length_b) {
  double m = std::min(tree_length_a, tree_length_b);
  if (tree_length_a == 0.0) return Reparam({0.0}, {0.0});
  if (tree_length_a > m) return Reparam({0.0, m, tree_length_a}, {0.0, m, m});
  return Reparam({0.0, m}, {0.0, m});
}

namespace {

using Pt = std::pair<double, double>;

bool dominates(const Pt& q, const Pt& p) { return q.first >= p.first && q.second >= p.second; }

struct Window {
  Pt start, end;
  std::vector<Pt> curve;
};

// Parameter on [lo, hi] where the monotone function f reaches x.
template <class F>
double invert_monotone(F&& f, double lo, double hi, double x) {
  bool up = f(hi) >= f(lo);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    if ((f(mid) < x) == up) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<Window> shared_window(const HoroballIndex& index, const Geodesic& xi, const Geodesic& gamma,
                                    const Interaction& ia, const Interaction& ib) {
  std::size_t h = static_cast<std::size_t>(ia.horosphere);
  auto X1 = [&](double u) { return index.normalized_x(h, xi.at_clamped(u)); };
  auto X2 = [&](double w) { return index.normalized_x(h, gamma.at_clamped(w)); };
  double d1 = X1(ia.exit) - X1(ia.enter), d2 = X2(ib.exit) - X2(ib.enter);
  double scale = 1e-12 * std::max({1.0, std::abs(X1(ia.enter)), std::abs(X2(ib.enter))});
  if (std::abs(d1) <= scale || std::abs(d2) <= scale || (d1 > 0) != (d2 > 0)) return std::nullopt;
  double sgn = d1 > 0 ? 1.0 : -1.0;
  double lo = std::max(sgn * X1(ia.enter), sgn * X2(ib.enter));
  double hi = std::min(sgn * X1(ia.exit), sgn * X2(ib.exit));
  if (!(lo < hi)) return std::nullopt;
  double span = std::max(ia.exit - ia.enter, ib.exit - ib.enter);
  int n = std::clamp(static_cast<int>(std::ceil(span / 1e-3)), 16, 4000);
  Window win;
  for (int k = 0; k <= n; ++k) {
    double x = sgn * (lo + (hi - lo) * k / n);
    double u = invert_monotone(X1, ia.enter, ia.exit, x);
    double w = invert_monotone(X2, ib.enter, ib.exit, x);
    if (!win.curve.empty()) {
      u = std::max(u, win.curve.back().first);
      w = std::max(w, win.curve.back().second);
    }
    win.curve.push_back({u, w});
  }
  win.start = win.curve.front();
  win.end = win.curve.back();
  return win;
}

}  // namespace

Coupling omega_coupling(const CombingPath& a, const CombingPath& b, OmegaCases* cases) {
  OmegaCases local;
  OmegaCases& cs = cases ? *cases : local;
  double T1 = a.raw().plane_length, T2 = b.raw().plane_length;
  Coupling c;
  c.push(0.0, 0.0);
  if (T1 == 0.0 || T2 == 0.0) {
    c.push(T1, 0.0);
    c.push(T1, T2);
    return c;
  }
  const Geodesic& xi = *a.raw().plane_leg;
  const Geodesic& gamma = *b.raw().plane_leg;
  Reparam rho = rho_reparam(a.raw().start.plane, a.raw().target.plane, b.raw().target.plane);
  std::vector<Pt> curve;
  for (std::size_t k = 0; k < rho.knots().size(); ++k) curve.push_back({rho.values()[k], rho.knots()[k]});
  if (curve.back().first < T1 || curve.back().second < T2) curve.push_back({T1, T2});

  std::vector<Window> windows;
  for (const Interaction& ia : a.log) {
    if (ia.leg != 2) continue;
    for (const Interaction& ib : b.log) {
      if (ib.leg != 2 || ib.horosphere != ia.horosphere) continue;
      ++cs.windows;
      if (auto w = shared_window(a.index(), xi, gamma, ia, ib)) windows.push_back(std::move(*w));
      else ++cs.fallbacks;
    }
  }
  std::sort(windows.begin(), windows.end(),
            [](const Window& x, const Window& y) { return x.start.first < y.start.first; });

  Pt cur{0.0, 0.0};
  std::size_t idx = 0;  // next rho-curve point not yet passed
  for (const Window& win : windows) {
    if (!dominates(win.end, cur)) {
      ++cs.fallbacks;
      continue;
    }
    std::size_t first = 0;
    if (dominates(win.start, cur)) {
      // Follow rho, clamped so neither path passes its window start.
      bool u_first = true;
      for (; idx < curve.size(); ++idx) {
        const Pt& q = curve[idx];
        if (q.first >= win.start.first || q.second >= win.start.second) {
          double du = q.first - cur.first, dw = q.second - cur.second;
          double tu = q.first >= win.start.first ? (du > 0 ? (win.start.first - cur.first) / du : 0.0) : 2.0;
          double tw = q.second >= win.start.second ? (dw > 0 ? (win.start.second - cur.second) / dw : 0.0) : 2.0;
          double t = std::clamp(std::min(tu, tw), 0.0, 1.0);
          u_first = tu <= tw;
          c.push(std::min(cur.first + t * du, win.start.first), std::min(cur.second + t * dw, win.start.second));
          break;
        }
        c.push(q.first, q.second);
        cur = q;
      }
      ++(u_first ? cs.entry_case1 : cs.entry_case2);
    } else {
      // Already past the start in one coordinate: join the matched curve
      // at its first point dominating the current position.
      ++(cur.first > win.start.first ? cs.entry_case1 : cs.entry_case2);
      while (first < win.curve.size() && !dominates(win.curve[first], cur)) ++first;
    }
    for (std::size_t k = first; k < win.curve.size(); ++k) c.push(win.curve[k].first, win.curve[k].second);
    cur = win.end;
    // Rejoin rho at its first point dominating the window end.
    std::size_t k = idx == 0 ? 0 : idx - 1;
    for (; k + 1 < curve.size(); ++k) {
      const Pt &q0 = curve[k], &q1 = curve[k + 1];
      if (dominates(q0, cur)) {
        c.push(q0.first, q0.second);
        break;
      }
      double du = q1.first - q0.first, dw = q1.second - q0.second;
      double tu = q0.first >= cur.first ? 0.0 : (du > 0 ? (cur.first - q0.first) / du : 2.0);
      double tw = q0.second >= cur.second ? 0.0 : (dw > 0 ? (cur.second - q0.second) / dw : 2.0);
      double t = std::max(tu, tw);
      if (t <= 1.0) {
        Pt q{q0.first + t * du, q0.second + t * dw};
        if (tu >= tw) q.first = cur.first;
        else q.second = cur.second;
        ++(tu >= tw ? cs.exit_case4 : cs.exit_case3);
        c.push(q.first, q.second);
        cur = {std::max(cur.first, q.first), std::max(cur.second, q.second)};
        break;
      }
    }
    idx = k + 1;
  }
  for (; idx < curve.size(); ++idx) c.push(curve[idx].first, curve[idx].second);
  c.push(T1, T2);
  return c;
}

std::pair<Reparam, Reparam> omega_reparams(const CombingPath& a, const CombingPath& b, OmegaCases* cases) {
  return omega_coupling(a, b, cases).to_reparams();
}

// ---------------------------------------------------------------------------
// Width

double width_bound(int p) { return std::max(2.0 * std::log(static_cast<double>(p)), std::exp(2.0) + 2.0); }

WidthReport async_width(const HoroballIndex& index, const OmegaPoint& alpha1, const OmegaPoint& alpha2,
                        double step) {
  double d = index.model().distance(alpha1, alpha2);
  if (d > 1.0 + kGeomTol) throw PreconditionError("async_width: endpoints " + std::to_string(d) + " apart (> 1)");
  return async_width(combing_path(index, alpha1, step), combing_path(index, alpha2, step));
}

WidthReport async_width(const CombingPath& a, const CombingPath& b) {
  const OmegaModel& model = a.index().model();
  const OmegaPoint& alpha1 = a.raw().target;
  const OmegaPoint& alpha2 = b.raw().target;
  double d = model.distance(alpha1, alpha2);
  if (d > 1.0 + kGeomTol) throw PreconditionError("async_width: endpoints " + std::to_string(d) + " apart (> 1)");
  double step = std::max(a.step, b.step);
  WidthReport rep;
  rep.alpha1 = alpha1;
  rep.alpha2 = alpha2;
  rep.bound = width_bound(model.prime());
  rep.slack = 2.0 * step;

  rep.samples1 = a.samples.size();
  rep.samples2 = b.samples.size();
  rep.one_plane_clean = a.raw().tree_geodesic.back() == b.raw().tree_geodesic.back() && a.log.empty() &&
                        b.log.empty();
  double prefix = common_prefix(a, b);

  // Tree phase, then the plane phase shifted by the tree lengths.
  double L1 = a.raw().tree_length, L2 = b.raw().tree_length;
  Coupling full;
  full.push(0.0, 0.0);
  double m = std::min(L1, L2);
  full.push(m, m);
  full.push(L1, L2);
  Coupling plane = omega_coupling(a, b, &rep.cases);
  for (const auto& [u, w] : plane.points) full.push(L1 + u, L2 + w);

  double measured = 0.0;
  for (std::size_t k = 1; k < full.points.size(); ++k) {
    auto [u0, w0] = full.points[k - 1];
    auto [u1, w1] = full.points[k];
    PathSample x0 = a.evaluate(u0), y0 = b.evaluate(w0);
    measured = std::max(measured, sample_distance(x0, y0, prefix));
    std::vector<std::pair<PathSample, PathSample>> stack{{a.evaluate(u1), b.evaluate(w1)}};
    while (!stack.empty()) {
      auto [x1, y1] = stack.back();
      bool fine = (same_path_distance(x0, x1) <= 0.5 * step && same_path_distance(y0, y1) <= 0.5 * step) ||
                  (x1.r - x0.r < kMinParamGap && y1.r - y0.r < kMinParamGap);
      if (fine) {
        measured = std::max(measured, sample_distance(x1, y1, prefix));
        x0 = x1;
        y0 = y1;
        stack.pop_back();
      } else {
        stack.push_back({a.evaluate(0.5 * (x0.r + x1.r)), b.evaluate(0.5 * (y0.r + y1.r))});
      }
    }
  }
  rep.measured = measured;
  rep.oracle = discrete_frechet(a.samples.size(), b.samples.size(), [&](std::size_t i, std::size_t j) {
    return sample_distance(a.samples[i], b.samples[j], prefix);
  });
  return rep;
}

void write_path_csv(std::ostream& os, const CombingPath& path) {
  os << "leg,s,x,y,tree_edge,lambda\n";
  os << std::setprecision(12);
  for (const PathSample& s : path.samples) {
    TreePoint t = path.tree_point(s.tree_s);
    int leg = s.r <= path.raw().tree_length && path.raw().tree_length > 0.0 ? 1 : 2;
    os << leg << ',' << s.r << ',' << s.plane.x << ',' << s.plane.y << ',' << t.from.key() << '>' << t.to.key()
       << ',' << t.lambda << '\n';
  }
}

}  // namespace omega
