#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "banachflow/geometry/lp_space.hpp"
#include "banachflow/scalar_spec.hpp"

namespace banachflow::evolution {

/// Time-dependent perturbation A(t)x = Ax + omega1(t) g(||x||) w, with w a
/// unit vector in the dual norm, so |A(t)x - Ax| = omega1(t) g(||x||)
/// exactly.
struct Drift {
  ScalarSpec omega1;
  ScalarSpec g = ScalarSpec::constant(1.0);  // g(xi) = coef * xi^expo
  std::vector<double> direction;
};

/// Monotone operator B -> B*. Linear kinds keep a row-major symmetric
/// matrix; diagonal-power applies (Ax)_i = coef |x_i|^{power-1} x_i.
struct OperatorSpec {
  enum class Kind { DiagonalPower, LinearSPD, LinearPSD, Custom };

  Kind kind = Kind::LinearSPD;
  double coef = 1.0;   // diagonal-power strength
  double power = 1.0;  // diagonal-power exponent, >= 1
  std::vector<double> matrix;  // row-major, dim x dim
  int dim = 0;
  std::optional<Drift> drift;
  std::function<std::vector<double>(std::span<const double>)> custom_apply;

  // Uniform-monotonicity record: for the limit operator,
  //   (Ax - Ay, x - y) >= mono_coef * kappa(p, dim) * ||x - y||_p^mono_expo
  // with the space factor kappa supplied by monotonicity_kappa. mono_coef
  // is 0 for proper monotone kinds (PSD, custom).
  double mono_coef = 0.0;
  double mono_expo = 2.0;

  /// Checks shape/symmetry/eigenvalue signs and fills the monotonicity
  /// record for the concrete kinds.
  void validate();

  std::vector<double> apply_limit(std::span<const double> x) const;
  std::vector<double> apply(double t, const geometry::LpSpace& space,
                            std::span<const double> x) const;
  /// Row-major Jacobian of the limit operator (Newton model for Custom).
  std::vector<double> jacobian_limit(std::span<const double> x) const;

  double smallest_eigenvalue() const;  // linear kinds only

  static OperatorSpec diagonal_power(int dim, double coef, double power);
  static OperatorSpec linear(Kind kind, std::vector<double> matrix, int dim);
};

/// Norm-equivalence factor folding the operator's natural modulus into the
/// l^p norm: kappa such that the record above holds with the space's norm.
double monotonicity_kappa(const OperatorSpec& op, const geometry::LpSpace& space);

}  // namespace banachflow::evolution
