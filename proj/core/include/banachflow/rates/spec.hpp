#pragma once

#include <functional>

namespace banachflow::rates {

using ScalarFn = std::function<double(double)>;

/// Data of the differential inequality
///   d(lambda)/dt <= -alpha(t) psi(lambda(t)) + gamma(t),  lambda(t0) = lambda0
/// in its general functional form. alpha and gamma are nonnegative and
/// nonincreasing, psi is strictly increasing with psi(0) = 0. phi is an
/// antiderivative of 1/psi, F an antiderivative of alpha; both come with
/// their inverses because the transient bound is
///   u(t, C) = phi_inv(phi(C) - a (F(t) - F(t0))),  a = (c0 - 1) / c0.
struct GeneralRateSpec {
  ScalarFn alpha;
  ScalarFn gamma;
  ScalarFn psi;
  ScalarFn psi_inv;
  ScalarFn phi;
  ScalarFn phi_inv;
  ScalarFn F;
  double c0 = 2.0;  // dimensionless, > 1
  double t0 = 1.0;
  double lambda0 = 0.0;

  double a() const { return (c0 - 1.0) / c0; }
  void validate() const;
};

/// Power-family coefficients: alpha(t) = b / t^m with m in [0,1) or m == 1,
/// gamma(t) = d / t^n with n > m, psi(lambda) = lambda^nu.
struct PowerRateSpec {
  double b = 1.0;
  double m = 1.0;
  double d = 0.0;
  double n = 2.0;
  double nu = 1.0;
  double c0 = 2.0;
  double t0 = 1.0;
  double lambda0 = 0.0;

  double a() const { return (c0 - 1.0) / c0; }
  void validate() const;

  /// Expands the coefficients into closures plus the matching phi/F pair.
  GeneralRateSpec general() const;
};

/// Constant alpha(t) = b with exponentially decaying gamma(t) = d e^{-n t}.
struct ExpRateSpec {
  double b = 1.0;
  double d = 0.0;
  double n = 1.0;
  double c0 = 2.0;
  double t0 = 0.0;
  double lambda0 = 0.0;

  double a() const { return (c0 - 1.0) / c0; }
  void validate() const;
};

}  // namespace banachflow::rates
