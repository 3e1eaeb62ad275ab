#pragma once

#include <functional>

#include "banachflow/geometry/lp_space.hpp"

namespace banachflow::geometry {

/// Radius-dependent constants of the duality-map and Lyapunov estimates on
/// the ball of radius R. C1 and C2 are derived on access so they can never
/// go stale when L or R change.
struct GeometryConstants {
  double L = 3.18;  // admissible range (1, 3.18]; the loose end by default
  double R = 1.0;

  double c1() const { return 8.0 * (L > R ? L : R); }
  double c2() const { return 2.0 * (R > 1.0 ? R : 1.0); }
};

/// Lower estimate of the modulus of convexity of l^p:
///   (p-1) eps^2 / 8            for p in (1, 2],
///   eps^p / (p 2^p)            for p >= 2.
/// Domain error outside [0, 2].
double modulus_convexity(const LpSpace& space, double eps);

/// Upper estimate of the modulus of smoothness of l^p:
///   tau^p / p                  for p in (1, 2],
///   (p-1) tau^2 / 2            for p >= 2.
double modulus_smoothness(const LpSpace& space, double tau);

/// Same formulas without the [0, 2] cap; the convexity estimate is applied
/// to rescaled gaps that can exceed 2 and to inverse evaluations whose
/// target exceeds the on-domain range. Both formulas stay increasing, so
/// the extension preserves one-sided validity of every bound built on them.
double convexity_estimate_extended(double p, double eps);
double smoothness_estimate_extended(double p, double tau);

/// mu(xi) = 8 xi^2 + C1 rho(xi), the upper Lyapunov envelope.
double mu_envelope(const LpSpace& space, const GeometryConstants& k, double xi);

/// g(eps) = delta(eps) / eps, nondecreasing; g(0) = 0.
double g_ratio(const LpSpace& space, double eps);

/// Generic bisection inverse for strictly increasing continuous f.
/// Requires f(lo) <= target <= f(hi); returns x with
/// |f(x) - target| <= 1e-10 max(|target|, 1).
double invert_increasing(const std::function<double(double)>& f, double target,
                         double lo, double hi);

/// Inverses of the three envelope functions, with brackets grown on demand.
double inverse_convexity(const LpSpace& space, double target);
double inverse_mu(const LpSpace& space, const GeometryConstants& k,
                  double target);
double inverse_g(const LpSpace& space, double target);

}  // namespace banachflow::geometry
