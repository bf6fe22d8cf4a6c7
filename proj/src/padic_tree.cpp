#include "omega/padic_tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace omega {

namespace {

Integer mod_inverse(Integer x, const Integer& m) {
  Integer r0 = m, r1 = ((x % m) + m) % m;
  Integer s0 = 0, s1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
  return ((s0 % m) + m) % m;
}

int valuation_or_max(const Rational& q, int p) {
  return q == 0 ? std::numeric_limits<int>::max() : valuation(q, p);
}

}  // namespace

std::string TreeVertex::key() const { return std::to_string(a) + ":" + to_string(b); }

std::size_t TreeVertexHash::operator()(const TreeVertex& v) const {
  std::size_t h = std::hash<int>{}(v.a);
  h ^= std::hash<std::string>{}(to_string(v.b)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

BruhatTitsTree::BruhatTitsTree(int p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("BruhatTitsTree: p must be prime");
}

Rational BruhatTitsTree::reduce_mod(const Rational& b, int a) const {
  if (b == 0) return 0;
  Integer num = numerator(b);
  Integer den = denominator(b);
  int k = 0;
  while (den % p_ == 0) {
    den /= p_;
    ++k;
  }
  int e = a + k;
  if (e <= 0) return 0;
  Integer modulus = integer_power(Integer(p_), static_cast<unsigned>(e));
  Integer r = ((num % modulus) + modulus) % modulus;
  if (den != 1) r = (r * mod_inverse(den, modulus)) % modulus;
  return Rational(r, integer_power(Integer(p_), static_cast<unsigned>(k)));
}

TreeVertex BruhatTitsTree::canonical(int a, const Rational& b) const {
  return TreeVertex{a, reduce_mod(b, a)};
}

bool BruhatTitsTree::is_canonical(const TreeVertex& v) const {
  return in_localization(v.b, p_) && reduce_mod(v.b, v.a) == v.b;
}

TreeVertex BruhatTitsTree::lattice_class(const RatMatrix& m) const {
  const auto& [alpha, beta, gamma, delta] = m;
  Rational det = alpha * delta - beta * gamma;
  if (det == 0) throw std::invalid_argument("lattice_class: singular matrix");
  int vdet = valuation(det, p_);
  int vg = valuation_or_max(gamma, p_), vd = valuation_or_max(delta, p_);
  // Column-reduce to upper-triangular Hermite form over Z_p, pivoting on the
  // bottom-row entry of least valuation, then rescale to [[p^a, b], [0, 1]].
  if (vd <= vg) return canonical(vdet - 2 * vd, beta / delta);
  return canonical(vdet - 2 * vg, alpha / gamma);
}

TreeVertex BruhatTitsTree::parent(const TreeVertex& v) const { return canonical(v.a - 1, v.b); }

std::vector<TreeVertex> BruhatTitsTree::neighbors(const TreeVertex& v) const {
  std::vector<TreeVertex> out;
  out.reserve(static_cast<std::size_t>(p_) + 1);
  out.push_back(parent(v));
  Rational step = rational_power(p_, v.a);
  for (int j = 0; j < p_; ++j) out.push_back(canonical(v.a + 1, v.b + step * j));
  return out;
}

std::vector<TreeVertex> BruhatTitsTree::geodesic(const TreeVertex& u, const TreeVertex& v) const {
  std::vector<TreeVertex> left{u}, right{v};
  while (left.back().a > right.back().a) left.push_back(parent(left.back()));
  while (right.back().a > left.back().a) right.push_back(parent(right.back()));
  while (!(left.back() == right.back())) {
    left.push_back(parent(left.back()));
    right.push_back(parent(right.back()));
  }
  right.pop_back();
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

int BruhatTitsTree::distance(const TreeVertex& u, const TreeVertex& v) const {
  return static_cast<int>(geodesic(u, v).size()) - 1;
}

TreeVertex BruhatTitsTree::act(const RatMatrix& m, const TreeVertex& v) const {
  Rational pa = rational_power(p_, v.a);
  return lattice_class({m[0] * pa, m[0] * v.b + m[1], m[2] * pa, m[2] * v.b + m[3]});
}

TreePoint BruhatTitsTree::act(const RatMatrix& m, const TreePoint& t) const {
  if (t.from == t.to) {
    TreeVertex w = act(m, t.from);
    return {w, w, 0.0};
  }
  return {act(m, t.from), act(m, t.to), t.lambda};
}

int BruhatTitsTree::exponent_after(const RatMatrix& m, const TreeVertex& v) const {
  Rational pa = rational_power(p_, v.a);
  Rational gamma = m[2] * pa, delta = m[2] * v.b + m[3];
  Rational det = (m[0] * m[3] - m[1] * m[2]) * pa;
  int vg = valuation_or_max(gamma, p_), vd = valuation_or_max(delta, p_);
  return valuation(det, p_) - 2 * std::min(vg, vd);
}

double BruhatTitsTree::point_distance(const TreePoint& s, const TreePoint& t) const {
  auto ends = [](const TreePoint& q) {
    return std::array<std::pair<TreeVertex, double>, 2>{
        std::pair{q.from, q.lambda}, std::pair{q.to, 1.0 - q.lambda}};
  };
  bool s_vertex = s.from == s.to, t_vertex = t.from == t.to;
  if (!s_vertex && !t_vertex) {
    if (s.from == t.from && s.to == t.to) return std::abs(s.lambda - t.lambda) * kEdgeLength;
    if (s.from == t.to && s.to == t.from) return std::abs(s.lambda - (1.0 - t.lambda)) * kEdgeLength;
  }
  double best = std::numeric_limits<double>::infinity();
  for (auto& [x, ox] : ends(s))
    for (auto& [y, oy] : ends(t)) best = std::min(best, ox + oy + distance(x, y));
  // A vertex point lying on the other point's edge.
  if (s_vertex && !t_vertex) {
    if (s.from == t.from) best = std::min(best, t.lambda);
    if (s.from == t.to) best = std::min(best, 1.0 - t.lambda);
  }
  if (t_vertex && !s_vertex) {
    if (t.from == s.from) best = std::min(best, s.lambda);
    if (t.from == s.to) best = std::min(best, 1.0 - s.lambda);
  }
  return best * kEdgeLength;
}

std::vector<TreeVertex> BruhatTitsTree::ball(const TreeVertex& v, int radius) const {
  std::vector<TreeVertex> out{v};
  std::unordered_set<TreeVertex, TreeVertexHash> seen{v};
  std::deque<std::pair<TreeVertex, int>> queue{{v, 0}};
  while (!queue.empty()) {
    auto [x, r] = queue.front();
    queue.pop_front();
    if (r == radius) continue;
    for (auto& y : neighbors(x)) {
      if (seen.insert(y).second) {
        out.push_back(y);
        queue.emplace_back(y, r + 1);
      }
    }
  }
  return out;
}

double height(const TreeVertex& v) { return v.a * kEdgeLength; }

double height(const TreePoint& t) {
  return (1.0 - t.lambda) * height(t.from) + t.lambda * height(t.to);
}

nlohmann::json to_json(const TreeVertex& v) {
  return nlohmann::json::array({v.a, numerator(v.b).str(), denominator(v.b).str()});
}

TreeVertex vertex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("vertex JSON must be [a, num, den]");
  auto text = [](const nlohmann::json& e) {
    return e.is_string() ? e.get<std::string>() : std::to_string(e.get<long long>());
  };
  return TreeVertex{j[0].get<int>(), Rational(Integer(text(j[1])), Integer(text(j[2])))};
}

}  // namespace omega
