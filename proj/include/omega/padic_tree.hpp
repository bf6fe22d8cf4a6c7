#pragma once

// The Bruhat-Tits tree of PGL_2(Q_p).  A vertex is the homothety class of
// the lattice spanned by the columns of [[p^a, b], [0, 1]] with b taken
// modulo p^a Z_p; every class has exactly one such form with b a
// p-power-denominator rational in [0, p^a).

#include "omega/rational.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace omega {

/// Model length of one tree edge.  The height function grows by the same
/// amount across an outgoing edge, so two edges (one translation by
/// diag(p, 1/p)) make one unit of height.
inline constexpr double kEdgeLength = 0.5;

struct TreeVertex {
  int a = 0;
  Rational b = 0;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
  std::string key() const;
};

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const;
};

/// A point on the edge from `from` to `to` at fraction `lambda` in [0, 1].
/// Vertices are represented with from == to and lambda == 0.
struct TreePoint {
  TreeVertex from;
  TreeVertex to;
  double lambda = 0.0;

  static TreePoint vertex(TreeVertex v) { return {v, v, 0.0}; }
  bool is_vertex() const { return from == to || lambda == 0.0 || lambda == 1.0; }
  /// Nearest endpoint when is_vertex().
  const TreeVertex& as_vertex() const { return lambda == 1.0 ? to : from; }
};

/// 2x2 rational matrix acting on lattices by left multiplication.
using RatMatrix = std::array<Rational, 4>;  // a, b, c, d

class BruhatTitsTree {
 public:
  explicit BruhatTitsTree(int p);

  int prime() const { return p_; }
  TreeVertex base() const { return TreeVertex{0, 0}; }

  TreeVertex canonical(int a, const Rational& b) const;
  bool is_canonical(const TreeVertex& v) const;

  /// Class of the lattice spanned by the columns of an invertible matrix.
  TreeVertex lattice_class(const RatMatrix& m) const;

  TreeVertex parent(const TreeVertex& v) const;
  /// Incoming neighbour first, then the p outgoing ones.
  std::vector<TreeVertex> neighbors(const TreeVertex& v) const;

  int distance(const TreeVertex& u, const TreeVertex& v) const;
  std::vector<TreeVertex> geodesic(const TreeVertex& u, const TreeVertex& v) const;

  /// Image of v under M (any invertible rational matrix).
  TreeVertex act(const RatMatrix& m, const TreeVertex& v) const;
  TreePoint act(const RatMatrix& m, const TreePoint& t) const;

  /// Lattice exponent a of M.v computed straight from valuations, without
  /// reducing b.
  int exponent_after(const RatMatrix& m, const TreeVertex& v) const;

  /// Model distance between points of the tree.
  double point_distance(const TreePoint& s, const TreePoint& t) const;

  /// All vertices within `radius` edges of v, in BFS order.
  std::vector<TreeVertex> ball(const TreeVertex& v, int radius) const;

 private:
  Rational reduce_mod(const Rational& b, int a) const;
  int p_;
};

/// Height function: 0 at the base vertex, +1/2 across every outgoing edge.
double height(const TreeVertex& v);
double height(const TreePoint& t);

nlohmann::json to_json(const TreeVertex& v);
TreeVertex vertex_from_json(const nlohmann::json& j);

}  // namespace omega
