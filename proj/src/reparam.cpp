#include "omega/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omega {

Reparam::Reparam(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() != values_.size() || knots_.empty())
    throw std::invalid_argument("reparam: knot/value size mismatch");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (knots_[i] < knots_[i - 1])
      throw std::invalid_argument("reparam: knots must be sorted");
}

Reparam Reparam::identity(double length) {
  return Reparam({0.0, length}, {0.0, length});
}

double Reparam::operator()(double t) const {
  if (knots_.empty()) return 0.0;
  if (t <= knots_.front()) return values_.front();
  if (t >= knots_.back()) return values_.back();
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  double t0 = knots_[i - 1], t1 = knots_[i];
  if (t1 == t0) return values_[i];
  double f = (t - t0) / (t1 - t0);
  return values_[i - 1] + f * (values_[i] - values_[i - 1]);
}

bool Reparam::is_nondecreasing(double tol) const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] < values_[i - 1] - tol) return false;
  return true;
}

bool Reparam::is_strictly_increasing(double tol) const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (!(values_[i] > values_[i - 1] - tol) || knots_[i] <= knots_[i - 1])
      return false;
  return true;
}

bool Reparam::slope_bounded(double bound, double tol) const {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    double dt = knots_[i] - knots_[i - 1];
    double dv = values_[i] - values_[i - 1];
    if (dv > bound * dt + tol) return false;
  }
  return true;
}

bool Reparam::satisfies_contract(double tol) const {
  if (knots_.empty()) return false;
  if (std::abs(knots_.front()) > tol || std::abs(values_.front()) > tol) return false;
  return is_nondecreasing(tol) && slope_bounded(1.0, tol);
}

double Reparam::preimage(double v) const {
  if (knots_.empty() || v <= values_.front()) return knots_.empty() ? 0.0 : knots_.front();
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] >= v) {
      double v0 = values_[i - 1], v1 = values_[i];
      if (v1 == v0) return knots_[i - 1];
      return knots_[i - 1] + (v - v0) / (v1 - v0) * (knots_[i] - knots_[i - 1]);
    }
  }
  return knots_.back();
}

void Coupling::push(double u, double w) {
  if (!points.empty()) {
    // Clip round-off so the curve stays monotone.
    u = std::max(u, points.back().first);
    w = std::max(w, points.back().second);
    if (u == points.back().first && w == points.back().second) return;
  }
  points.emplace_back(u, w);
}

bool Coupling::is_monotone(double tol) const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].first < points[i - 1].first - tol ||
        points[i].second < points[i - 1].second - tol)
      return false;
  return true;
}

std::pair<Reparam, Reparam> Coupling::to_reparams() const {
  std::vector<double> t{0.0}, u, w;
  if (points.empty()) return {Reparam({0.0}, {0.0}), Reparam({0.0}, {0.0})};
  u.push_back(points.front().first);
  w.push_back(points.front().second);
  for (std::size_t i = 1; i < points.size(); ++i) {
    double du = points[i].first - points[i - 1].first;
    double dw = points[i].second - points[i - 1].second;
    t.push_back(t.back() + std::max(du, dw));
    u.push_back(points[i].first);
    w.push_back(points[i].second);
  }
  return {Reparam(t, u), Reparam(std::move(t), std::move(w))};
}

Coupling Coupling::swapped() const {
  Coupling c;
  c.points.reserve(points.size());
  for (auto [u, w] : points) c.points.emplace_back(w, u);
  return c;
}

}  // namespace omega
