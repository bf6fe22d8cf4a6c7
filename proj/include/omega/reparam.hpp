#pragma once

#include <utility>
#include <vector>

namespace omega {

/// Piecewise-linear nondecreasing map [0,T] -> [0,T'] given by knots.
/// Evaluation past T continues at the last value (a pause).
class Reparam {
 public:
  Reparam() = default;
  Reparam(std::vector<double> knots, std::vector<double> values);

  static Reparam identity(double length);

  double operator()(double t) const;
  double domain_end() const { return knots_.empty() ? 0.0 : knots_.back(); }
  double range_end() const { return values_.empty() ? 0.0 : values_.back(); }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  bool is_nondecreasing(double tol = 1e-12) const;
  bool is_strictly_increasing(double tol = 0.0) const;
  /// Every linear piece has slope <= bound (+tol).
  bool slope_bounded(double bound = 1.0, double tol = 1e-9) const;
  /// Membership in the reparametrization set: starts at 0, nondecreasing,
  /// and on every unit step rises by at most 1.
  bool satisfies_contract(double tol = 1e-9) const;

  /// Generalized inverse: smallest t with value(t) >= v.
  double preimage(double v) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// A monotone curve in the product of two parameter intervals.  Both
/// coordinates are nondecreasing along the list.
struct Coupling {
  std::vector<std::pair<double, double>> points;

  void push(double u, double w);
  bool is_monotone(double tol = 1e-9) const;
  /// Parametrize by t with dt = max(du, dw) so both maps have slope <= 1.
  std::pair<Reparam, Reparam> to_reparams() const;
  Coupling swapped() const;
};

}  // namespace omega
