#pragma once

// Discrete Frechet distance between two sample sequences.

#include "omega/hyp_plane.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace omega {

/// Standard dynamic program over the n x m grid with a rolling row.
/// `dist(i, j)` returns the distance between P[i] and Q[j].  Throws
/// DegenerateInput when either side is empty.
template <class Dist>
double discrete_frechet(std::size_t n, std::size_t m, Dist&& dist) {
  if (n == 0 || m == 0) throw DegenerateInput("discrete_frechet: empty sample list");
  std::vector<double> row(m);
  row[0] = dist(0, 0);
  for (std::size_t j = 1; j < m; ++j) row[j] = std::max(row[j - 1], dist(0, j));
  for (std::size_t i = 1; i < n; ++i) {
    double diag = row[0];
    row[0] = std::max(row[0], dist(i, 0));
    for (std::size_t j = 1; j < m; ++j) {
      double best = std::min({diag, row[j], row[j - 1]});
      diag = row[j];
      row[j] = std::max(best, dist(i, j));
    }
  }
  return row[m - 1];
}

template <class T, class Metric>
double discrete_frechet(const std::vector<T>& P, const std::vector<T>& Q, Metric&& metric) {
  return discrete_frechet(P.size(), Q.size(), [&](std::size_t i, std::size_t j) { return metric(P[i], Q[j]); });
}

/// Plane polylines under the hyperbolic metric.
double discrete_frechet(const std::vector<HPoint>& P, const std::vector<HPoint>& Q);

}  // namespace omega
