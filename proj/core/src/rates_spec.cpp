#include "banachflow/rates/spec.hpp"

#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::rates {

void GeneralRateSpec::validate() const {
  if (!(c0 > 1.0)) throw ParameterError("c0 must exceed 1");
  if (!(lambda0 >= 0.0)) throw ParameterError("lambda0 must be nonnegative");
  if (!alpha || !gamma || !psi || !psi_inv || !phi || !phi_inv || !F)
    throw ParameterError("general rate spec has unset functions");

  // psi strictly increasing with psi(0) = 0, checked by sampling.
  if (std::abs(psi(0.0)) > 1e-12)
    throw ParameterError("psi(0) must vanish");
  const double probes[] = {1e-6, 1e-3, 1e-1, 1.0, 10.0, 100.0};
  double prev = 0.0;
  for (double lam : probes) {
    const double v = psi(lam);
    if (!(v > prev)) throw ParameterError("psi must be strictly increasing");
    prev = v;
  }

  // alpha, gamma nonnegative and nonincreasing; F positive past t0.
  const double span = std::max(1.0, std::abs(t0));
  double ta = t0;
  for (int i = 0; i < 4; ++i) {
    const double tb = ta + span * (i + 1);
    if (alpha(ta) < 0.0 || gamma(ta) < 0.0)
      throw ParameterError("alpha and gamma must be nonnegative");
    if (alpha(tb) > alpha(ta) * (1.0 + 1e-12) + 1e-300 ||
        gamma(tb) > gamma(ta) * (1.0 + 1e-12) + 1e-300)
      throw ParameterError("alpha and gamma must be nonincreasing");
    if (!(F(tb) > 0.0)) throw ParameterError("F must be positive for t >= t0");
    ta = tb;
  }
  if (!(F(t0) > 0.0)) throw ParameterError("F must be positive for t >= t0");
}

void PowerRateSpec::validate() const {
  if (!(b > 0.0)) throw ParameterError("b must be positive");
  if (!(d >= 0.0)) throw ParameterError("d must be nonnegative");
  if (!(nu > 0.0)) throw ParameterError("nu must be positive");
  if (!(c0 > 1.0)) throw ParameterError("c0 must exceed 1");
  if (!(t0 > 0.0)) throw ParameterError("t0 must be positive");
  if (!(n > m)) throw ParameterError("need n > m");
  if (!(lambda0 >= 0.0)) throw ParameterError("lambda0 must be nonnegative");
  if (m != 1.0 && !(m >= 0.0 && m < 1.0))
    throw ParameterError("m must lie in [0,1) or equal 1");
}

GeneralRateSpec PowerRateSpec::general() const {
  validate();
  GeneralRateSpec g;
  const double bb = b, mm = m, dd = d, nn = n, vv = nu, tt0 = t0;

  g.alpha = [bb, mm](double t) { return bb * std::pow(t, -mm); };
  g.gamma = [dd, nn](double t) { return dd * std::pow(t, -nn); };
  g.psi = [vv](double lam) { return std::pow(lam, vv); };
  g.psi_inv = [vv](double y) { return std::pow(y, 1.0 / vv); };

  if (nu == 1.0) {
    g.phi = [](double lam) { return std::log(lam); };
    g.phi_inv = [](double z) { return std::exp(z); };
  } else {
    // phi(lam) = lam^{1-nu} / (1-nu). For nu < 1 the inverse is clamped at
    // the extinction boundary; past it the transient bound is identically 0.
    g.phi = [vv](double lam) { return std::pow(lam, 1.0 - vv) / (1.0 - vv); };
    g.phi_inv = [vv](double z) {
      const double w = (1.0 - vv) * z;
      if (vv < 1.0) return std::pow(std::max(w, 0.0), 1.0 / (1.0 - vv));
      if (!(w > 0.0)) throw DomainError("phi inverse argument out of range");
      return std::pow(w, 1.0 / (1.0 - vv));
    };
  }

  // Shifted so F(t0) = 1 > 0; only increments F(t) - F(t0) enter the bound.
  if (m == 1.0) {
    g.F = [bb, tt0](double t) { return 1.0 + bb * std::log(t / tt0); };
  } else {
    g.F = [bb, mm, tt0](double t) {
      return 1.0 +
             bb * (std::pow(t, 1.0 - mm) - std::pow(tt0, 1.0 - mm)) / (1.0 - mm);
    };
  }

  g.c0 = c0;
  g.t0 = t0;
  g.lambda0 = lambda0;
  return g;
}

void ExpRateSpec::validate() const {
  if (!(b > 0.0)) throw ParameterError("b must be positive");
  if (!(d >= 0.0)) throw ParameterError("d must be nonnegative");
  if (!(c0 > 1.0)) throw ParameterError("c0 must exceed 1");
  if (!(lambda0 >= 0.0)) throw ParameterError("lambda0 must be nonnegative");
  if (d > 0.0 && !(n > 0.0))
    throw ParameterError("gamma decay rate n must be positive when d > 0");
}

}  // namespace banachflow::rates
