#pragma once

#include <span>
#include <vector>

#include "banachflow/evolution/operator.hpp"
#include "banachflow/geometry/lp_space.hpp"
#include "banachflow/scalar_spec.hpp"

namespace banachflow::evolution {

/// f(t) = f + omega2(t) w with |w|_q = 1, so ||f(t) - f|| = omega2(t).
struct Forcing {
  std::vector<double> limit;
  ScalarSpec omega2;
  std::vector<double> direction;

  std::vector<double> value(double t) const;
  static Forcing constant(std::vector<double> f);
};

/// How the damping weight enters the dual equation:
///   None:     d(phi)/dt = f(t) - A(t)x
///   Factor:   d(phi)/dt = -alpha(t) (A(t)x - f(t))
///   Additive: d(phi)/dt = f(t) - A(t)x - alpha(t) phi
///   Constant: additive with a fixed alpha
enum class RegularizationMode { None, Factor, Additive, Constant };

struct Regularization {
  RegularizationMode mode = RegularizationMode::None;
  ScalarSpec alpha;
};

struct EvolutionProblem {
  geometry::LpSpace space;
  OperatorSpec op;
  Forcing forcing;
  Regularization reg;
  std::vector<double> x0;
  double t0 = 1.0;

  void validate() const;
  /// Right-hand side of the dual evolution at (t, phi), x = U^{-1} phi.
  std::vector<double> dual_rhs(double t, std::span<const double> phi) const;
};

}  // namespace banachflow::evolution
