#include "omega/frechet.hpp"

namespace omega {

double discrete_frechet(const std::vector<HPoint>& P, const std::vector<HPoint>& Q) {
  return discrete_frechet(P, Q, [](const HPoint& a, const HPoint& b) { return hyp_distance(a, b); });
}

}  // namespace omega
