#pragma once

#include <span>
#include <vector>

namespace banachflow::geometry {

/// Finite-dimensional real l^p space, 1 < p < infinity, together with its
/// dual l^q, 1/p + 1/q = 1. The endpoint exponents are rejected: they are
/// neither uniformly convex nor uniformly smooth, and every estimate here
/// needs both.
class LpSpace {
 public:
  LpSpace(double p, int dim);

  double p() const { return p_; }
  double q() const { return p_ / (p_ - 1.0); }
  int dim() const { return dim_; }
  LpSpace dual() const { return LpSpace(q(), dim_); }

  double norm(std::span<const double> x) const;
  double dual_norm(std::span<const double> phi) const;

  /// Duality pairing (phi, x).
  double pairing(std::span<const double> phi, std::span<const double> x) const;

  /// Normalized duality map: (Ux)_i = ||x||^{2-p} |x_i|^{p-1} sgn(x_i),
  /// so (Ux, x) = ||x||^2 and |Ux|_q = ||x||_p. U(0) = 0 by continuity.
  std::vector<double> duality_map(std::span<const double> x) const;

  /// Inverse of the duality map: the dual space's own duality map.
  std::vector<double> inverse_duality_map(std::span<const double> phi) const;

  /// V(phi, y) = (|phi|^2 - 2 (phi, y) + ||y||^2) / 2; nonnegative whenever
  /// phi lies in the range of U.
  double lyapunov(std::span<const double> phi, std::span<const double> y) const;

  /// Jacobian of the duality map at x, row-major dim x dim. Coordinates
  /// below `floor` in magnitude are clamped so the p < 2 diagonal stays
  /// finite; callers use this as a Newton model, not an exact derivative.
  std::vector<double> duality_jacobian(std::span<const double> x,
                                       double floor = 1e-10) const;

 private:
  void check_dim(std::span<const double> v) const;
  double p_;
  int dim_;
};

/// Pair (x, Ux) kept together so invariant checks can round-trip.
struct DualPair {
  std::vector<double> x;
  std::vector<double> phi;

  static DualPair of(const LpSpace& space, std::vector<double> x);
};

}  // namespace banachflow::geometry
