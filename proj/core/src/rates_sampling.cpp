#include "banachflow/rates/sampling.hpp"

#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::rates {

namespace {

double draw_d(Rng& rng, double hi) {
  return rng.uniform01() < 0.1 ? 0.0 : rng.uniform(0.05, hi);
}

double draw_lambda0(Rng& rng, double hi) {
  return rng.uniform01() < 0.15 ? 0.0 : rng.uniform(0.0, hi);
}

void tangency_sides(const PowerRateSpec& s, double& lhs, double& rhs) {
  lhs = s.a() * s.b * std::pow(s.c0 * s.d / s.b, (s.nu - 1.0) / s.nu);
  const double expo = (s.m - s.nu + s.n * (s.nu - 1.0)) / s.nu;
  rhs = ((s.n - s.m) / s.nu) * std::pow(s.t0, expo);
}

}  // namespace

PowerRateSpec draw_power_spec(int lemma, Rng& rng) {
  PowerRateSpec s;
  s.b = rng.uniform(0.3, 4.0);
  s.c0 = rng.uniform(1.1, 4.0);
  s.t0 = rng.uniform(0.3, 2.5);
  s.lambda0 = draw_lambda0(rng, 8.0);
  switch (lemma) {
    case 4:
      s.m = 1.0;
      s.nu = 1.0;
      s.n = rng.uniform(1.05, 3.5);
      s.d = draw_d(rng, 2.5);
      break;
    case 5:
      s.m = rng.uniform(0.0, 0.9);
      s.nu = 1.0;
      s.n = s.m + rng.uniform(0.1, 3.0);
      s.d = draw_d(rng, 2.5);
      break;
    case 6: {
      s.m = 1.0;
      s.nu = rng.uniform(1.05, 3.0);
      s.n = rng.uniform(1.05, 3.5);
      s.d = draw_d(rng, 2.0);
      // Shrink d until the transient starts above the tracking level; the
      // admissibility condition for this family demands it.
      double lhs, rhs;
      tangency_sides(s, lhs, rhs);
      int guard = 0;
      while (s.d > 0.0 && !(lhs < rhs)) {
        s.d *= 0.5;
        if (s.d < 1e-8) s.d = 0.0;
        tangency_sides(s, lhs, rhs);
        if (++guard > 200) {
          s.d = 0.0;
          break;
        }
      }
      break;
    }
    case 7: {
      s.m = rng.uniform(0.0, 0.9);
      s.nu = rng.uniform(1.05, 3.0);
      s.n = s.m + rng.uniform(0.1, 3.0);
      s.d = draw_d(rng, 2.0);
      const double s_u = (1.0 - s.m) / (s.nu - 1.0);
      const double s_v = (s.n - s.m) / s.nu;
      if (s_u <= s_v && s.d > 0.0) {
        double lhs, rhs;
        tangency_sides(s, lhs, rhs);
        int guard = 0;
        while (!(lhs < rhs)) {
          s.d *= 0.5;
          if (s.d < 1e-8) {
            s.d = 0.0;
            break;
          }
          tangency_sides(s, lhs, rhs);
          if (++guard > 200) {
            s.d = 0.0;
            break;
          }
        }
      }
      break;
    }
    case 8:
      s.m = 1.0;
      s.nu = rng.uniform(0.3, 0.95);
      s.n = rng.uniform(1.05, 3.5);
      s.d = draw_d(rng, 2.5);
      break;
    case 9:
      s.m = rng.uniform(0.0, 0.9);
      s.nu = rng.uniform(0.3, 0.95);
      s.n = s.m + rng.uniform(0.1, 3.0);
      s.d = draw_d(rng, 2.5);
      break;
    default:
      throw ParameterError("power-family draw needs lemma id in 4..9");
  }
  s.validate();
  return s;
}

ExpRateSpec draw_exp_spec(Rng& rng) {
  ExpRateSpec s;
  s.b = rng.uniform(0.3, 3.0);
  s.c0 = rng.uniform(1.1, 4.0);
  s.t0 = rng.uniform(0.2, 2.0);
  s.n = rng.uniform(0.1, 2.5);
  s.d = draw_d(rng, 2.0);
  s.lambda0 = draw_lambda0(rng, 8.0);
  s.validate();
  return s;
}

PowerRateSpec draw_two_branch_linear_spec(Rng& rng) {
  for (int tries = 0; tries < 10000; ++tries) {
    PowerRateSpec s;
    s.m = 1.0;
    s.nu = 1.0;
    s.b = rng.uniform(1.0, 5.0);
    s.n = rng.uniform(1.05, 2.5);
    s.c0 = rng.uniform(1.5, 4.0);
    s.t0 = rng.uniform(0.5, 2.0);
    s.d = rng.uniform(0.05, 1.5);
    const double ab = s.a() * s.b;
    if (!(ab > s.n - 1.0 + 0.05)) continue;
    const double threshold = s.c0 * s.d / s.b * std::pow(s.t0, 1.0 - s.n);
    s.lambda0 = threshold * rng.uniform(1.5, 8.0);
    s.validate();
    return s;
  }
  throw ParameterError("two-branch draw failed");
}

ExpRateSpec draw_two_branch_exp_spec(Rng& rng) {
  for (int tries = 0; tries < 10000; ++tries) {
    ExpRateSpec s;
    s.b = rng.uniform(0.5, 3.0);
    s.c0 = rng.uniform(1.5, 4.0);
    s.t0 = rng.uniform(0.2, 2.0);
    s.d = rng.uniform(0.05, 2.0);
    const double ab = s.a() * s.b;
    s.n = rng.uniform(0.05, 0.95) * ab;  // strictly below ab
    const double threshold = s.c0 * s.d / s.b * std::exp(-s.n * s.t0);
    s.lambda0 = threshold * rng.uniform(1.5, 8.0);
    s.validate();
    return s;
  }
  throw ParameterError("two-branch draw failed");
}

PowerRateSpec draw_vanishing_spec(Rng& rng) {
  PowerRateSpec s;
  s.nu = rng.uniform(0.7, 1.2);
  s.m = rng.uniform(0.0, 0.5);
  s.n = s.m + rng.uniform(1.2, 2.5);
  s.d = rng.uniform01() < 0.2 ? 0.0 : rng.uniform(0.0, 0.2);
  s.b = rng.uniform(0.5, 2.0);
  s.c0 = rng.uniform(1.5, 3.0);
  s.t0 = rng.uniform(0.5, 2.0);
  s.lambda0 = rng.uniform(1.0, 5.0);
  s.validate();
  return s;
}

}  // namespace banachflow::rates
