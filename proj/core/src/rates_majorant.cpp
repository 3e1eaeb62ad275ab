#include "banachflow/rates/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banachflow/errors.hpp"
#include "banachflow/grid.hpp"
#include "banachflow/rates/root.hpp"

namespace banachflow::rates {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// coef * t^{-expo}
Branch power_branch(double coef, double expo, double lo, double hi) {
  Branch b;
  b.tag = "power";
  b.params = {{"coef", coef}, {"exponent", expo}};
  b.t_lo = lo;
  b.t_hi = hi;
  b.eval = [coef, expo](double t) { return coef * std::pow(t, -expo); };
  const double lc = std::log(coef);
  b.log_eval = [lc, expo](double t) { return lc - expo * std::log(t); };
  return b;
}

// coef * exp(-rate (t - t_ref))
Branch exp_branch(double coef, double rate, double t_ref, double lo, double hi) {
  Branch b;
  b.tag = "exp";
  b.params = {{"coef", coef}, {"rate", rate}, {"t_ref", t_ref}};
  b.t_lo = lo;
  b.t_hi = hi;
  b.eval = [coef, rate, t_ref](double t) {
    return coef * std::exp(-rate * (t - t_ref));
  };
  const double lc = std::log(coef);
  b.log_eval = [lc, rate, t_ref](double t) { return lc - rate * (t - t_ref); };
  return b;
}

// C * exp(-k/(1-m) (t^{1-m} - t_ref^{1-m})), the transient bound for
// psi linear with alpha = b/t^m, m < 1 (k = a b).
Branch stretched_exp_branch(double C, double k, double m, double t_ref,
                            double lo, double hi) {
  Branch b;
  b.tag = "stretched-exp";
  b.params = {{"coef", C}, {"rate", k}, {"m", m}, {"t_ref", t_ref}};
  b.t_lo = lo;
  b.t_hi = hi;
  const double s = 1.0 - m;
  const double base = std::pow(t_ref, s);
  b.eval = [C, k, s, base](double t) {
    return C * std::exp(-(k / s) * (std::pow(t, s) - base));
  };
  const double lc = std::log(C);
  b.log_eval = [lc, k, s, base](double t) {
    return lc - (k / s) * (std::pow(t, s) - base);
  };
  return b;
}

// Increment of the alpha antiderivative, a * (F(t) - F(t_ref)), for the
// power family with k = a b.
double transient_shift(double k, double m, double t_ref, double t) {
  if (m == 1.0) return k * std::log(t / t_ref);
  return k * (std::pow(t, 1.0 - m) - std::pow(t_ref, 1.0 - m)) / (1.0 - m);
}

// [C^{1-nu} + (nu-1) a b dF(t)]^{1/(1-nu)} for nu != 1; clamps at the
// extinction boundary, which only binds for nu < 1.
Branch root_power_branch(double C, double nu, double k, double m, double t_ref,
                         double lo, double hi) {
  Branch b;
  b.tag = m == 1.0 ? "log-power" : "root-power";
  b.params = {{"coef", C}, {"nu", nu}, {"rate", k}, {"m", m}, {"t_ref", t_ref}};
  b.t_lo = lo;
  b.t_hi = hi;
  const double head = std::pow(C, 1.0 - nu);
  const double q = 1.0 / (1.0 - nu);
  b.eval = [head, nu, k, m, t_ref, q](double t) {
    const double w = head + (nu - 1.0) * transient_shift(k, m, t_ref, t);
    if (w <= 0.0) return 0.0;
    return std::pow(w, q);
  };
  b.log_eval = [head, nu, k, m, t_ref, q](double t) {
    const double w = head + (nu - 1.0) * transient_shift(k, m, t_ref, t);
    if (w <= 0.0) return -kInf;
    return q * std::log(w);
  };
  return b;
}

Branch zero_branch(double lo, double hi) {
  Branch b;
  b.tag = "zero";
  b.t_lo = lo;
  b.t_hi = hi;
  b.eval = [](double) { return 0.0; };
  b.log_eval = [](double) { return -kInf; };
  return b;
}

MajorantCurve single_branch_curve(double t0, Branch br,
                                  std::optional<double> expo,
                                  DecayFamily family) {
  br.t_lo = t0;
  br.t_hi = kInf;
  std::vector<Branch> bs;
  bs.push_back(std::move(br));
  return MajorantCurve(t0, std::move(bs), {}, expo, family);
}

MajorantCurve handoff_curve(double t0, Branch head, Branch tail, double t_bar,
                            std::optional<double> expo, DecayFamily family) {
  head.t_lo = t0;
  head.t_hi = t_bar;
  tail.t_lo = t_bar;
  tail.t_hi = kInf;
  std::vector<Branch> bs;
  bs.push_back(std::move(head));
  bs.push_back(std::move(tail));
  return MajorantCurve(t0, std::move(bs), {t_bar}, expo, family);
}

// Doubles the horizon until the transient branch falls below the tracking
// branch, then isolates the unique handoff point.
double numeric_crossover(const Branch& u, const Branch& v, double t0,
                         double known_hi = 0.0) {
  double hi = known_hi;
  if (hi <= t0) {
    hi = std::max(2.0 * t0, t0 + 1.0);
    while (u.eval(hi) >= v.eval(hi)) {
      hi *= 2.0;
      if (hi > 1e30)
        throw RegimeError("transient branch never falls below tracking branch");
    }
  }
  return crossover_root(u.eval, v.eval, t0, hi);
}

// Transient-only bound when gamma vanishes identically.
MajorantCurve gamma_free_power_curve(const PowerRateSpec& s) {
  const double ab = s.a() * s.b;
  if (s.lambda0 == 0.0)
    return single_branch_curve(s.t0, zero_branch(s.t0, kInf), std::nullopt,
                               DecayFamily::None);
  if (s.nu == 1.0) {
    if (s.m == 1.0)
      return single_branch_curve(
          s.t0, power_branch(s.lambda0 * std::pow(s.t0, ab), ab, s.t0, kInf),
          ab, DecayFamily::Power);
    return single_branch_curve(
        s.t0, stretched_exp_branch(s.lambda0, ab, s.m, s.t0, s.t0, kInf),
        std::nullopt, DecayFamily::None);
  }
  Branch u = root_power_branch(s.lambda0, s.nu, ab, s.m, s.t0, s.t0, kInf);
  if (s.nu > 1.0) {
    if (s.m == 1.0)
      return single_branch_curve(s.t0, std::move(u), std::nullopt,
                                 DecayFamily::None);
    return single_branch_curve(s.t0, std::move(u),
                               (1.0 - s.m) / (s.nu - 1.0), DecayFamily::Power);
  }
  // nu < 1: the bound extinguishes in finite time.
  const double head = std::pow(s.lambda0, 1.0 - s.nu);
  double t_zero;
  if (s.m == 1.0)
    t_zero = s.t0 * std::exp(head / (ab * (1.0 - s.nu)));
  else
    t_zero = std::pow(head * (1.0 - s.m) / ((1.0 - s.nu) * ab) +
                          std::pow(s.t0, 1.0 - s.m),
                      1.0 / (1.0 - s.m));
  u.t_lo = s.t0;
  u.t_hi = t_zero;
  std::vector<Branch> bs;
  bs.push_back(std::move(u));
  bs.push_back(zero_branch(t_zero, kInf));
  return MajorantCurve(s.t0, std::move(bs), {}, std::nullopt,
                       DecayFamily::None);
}

// Left/right sides of the tangency comparison at t0 between the transient
// started at the tracking level and the tracking branch itself. The
// transient starts below (case of a tracking-only bound) exactly when
// lhs >= rhs.
void tangency_sides(const PowerRateSpec& s, double& lhs, double& rhs) {
  lhs = s.a() * s.b * std::pow(s.c0 * s.d / s.b, (s.nu - 1.0) / s.nu);
  const double expo = (s.m - s.nu + s.n * (s.nu - 1.0)) / s.nu;
  rhs = ((s.n - s.m) / s.nu) * std::pow(s.t0, expo);
}

}  // namespace

MajorantCurve power_majorant(const PowerRateSpec& s) {
  s.validate();
  if (s.d == 0.0) return gamma_free_power_curve(s);

  const double a = s.a();
  const double ab = a * s.b;
  const double v_coef = std::pow(s.c0 * s.d / s.b, 1.0 / s.nu);
  const double v_expo = (s.n - s.m) / s.nu;
  const double v0 = v_coef * std::pow(s.t0, -v_expo);
  double tang_lhs, tang_rhs;
  tangency_sides(s, tang_lhs, tang_rhs);
  const bool transient_starts_below = tang_lhs >= tang_rhs;

  const Branch v = power_branch(v_coef, v_expo, s.t0, kInf);
  const double C = std::max(s.lambda0, v0);

  if (s.nu == 1.0 && s.m == 1.0) {
    if (ab > s.n - 1.0) {
      if (s.lambda0 <= v0)
        return single_branch_curve(s.t0, v, v_expo, DecayFamily::Power);
      const double t_bar =
          std::pow(s.b * s.lambda0 * std::pow(s.t0, ab) / (s.c0 * s.d),
                   1.0 / (ab + 1.0 - s.n));
      Branch u = power_branch(s.lambda0 * std::pow(s.t0, ab), ab, s.t0, t_bar);
      return handoff_curve(s.t0, std::move(u), v, t_bar, v_expo,
                           DecayFamily::Power);
    }
    return single_branch_curve(s.t0,
                               power_branch(C * std::pow(s.t0, ab), ab, s.t0, kInf),
                               ab, DecayFamily::Power);
  }

  if (s.nu == 1.0) {
    if (s.lambda0 <= v0 && transient_starts_below)
      return single_branch_curve(s.t0, v, v_expo, DecayFamily::Power);
    Branch u = stretched_exp_branch(C, ab, s.m, s.t0, s.t0, kInf);
    const double t_bar = numeric_crossover(u, v, s.t0);
    return handoff_curve(s.t0, std::move(u), v, t_bar, v_expo,
                         DecayFamily::Power);
  }

  if (s.nu > 1.0 && s.m == 1.0) {
    if (!(tang_lhs < tang_rhs))
      throw ParameterError(
          "coefficients violate the admissibility condition for nu > 1 with "
          "alpha ~ 1/t");
    return single_branch_curve(
        s.t0, root_power_branch(C, s.nu, ab, 1.0, s.t0, s.t0, kInf),
        std::nullopt, DecayFamily::None);
  }

  if (s.nu > 1.0) {
    const double u_expo = (1.0 - s.m) / (s.nu - 1.0);
    Branch u = root_power_branch(C, s.nu, ab, s.m, s.t0, s.t0, kInf);
    if (v_expo < u_expo) {
      if (s.lambda0 <= v0 && transient_starts_below)
        return single_branch_curve(s.t0, v, v_expo, DecayFamily::Power);
      const double t_bar = numeric_crossover(u, v, s.t0);
      return handoff_curve(s.t0, std::move(u), v, t_bar, v_expo,
                           DecayFamily::Power);
    }
    if (!transient_starts_below)
      return single_branch_curve(s.t0, std::move(u), u_expo,
                                 DecayFamily::Power);
    throw ParameterError(
        "coefficients fall between the transient-dominant and "
        "tracking-dominant hypothesis regions");
  }

  // nu < 1: the transient extinguishes, so the tracking branch always wins
  // eventually; a tracking-only bound needs the start-below condition.
  if (s.lambda0 < v0 && transient_starts_below)
    return single_branch_curve(s.t0, v, v_expo, DecayFamily::Power);
  Branch u = root_power_branch(C, s.nu, ab, s.m, s.t0, s.t0, kInf);
  const double head = std::pow(C, 1.0 - s.nu);
  double t_zero;
  if (s.m == 1.0)
    t_zero = s.t0 * std::exp(head / (ab * (1.0 - s.nu)));
  else
    t_zero = std::pow(head * (1.0 - s.m) / ((1.0 - s.nu) * ab) +
                          std::pow(s.t0, 1.0 - s.m),
                      1.0 / (1.0 - s.m));
  const double t_bar = numeric_crossover(u, v, s.t0, t_zero);
  return handoff_curve(s.t0, std::move(u), v, t_bar, v_expo,
                       DecayFamily::Power);
}

MajorantCurve exp_majorant(const ExpRateSpec& s) {
  s.validate();
  const double ab = s.a() * s.b;

  if (s.d == 0.0) {
    if (s.lambda0 == 0.0)
      return single_branch_curve(s.t0, zero_branch(s.t0, kInf), std::nullopt,
                                 DecayFamily::None);
    return single_branch_curve(s.t0, exp_branch(s.lambda0, ab, s.t0, s.t0, kInf),
                               ab, DecayFamily::Exponential);
  }

  const double v0 = (s.c0 * s.d / s.b) * std::exp(-s.n * s.t0);
  const Branch v = exp_branch(v0, s.n, s.t0, s.t0, kInf);
  const double beta = std::min(ab, s.n);

  if (s.n > ab) {
    const double C = std::max(s.lambda0, v0);
    return single_branch_curve(s.t0, exp_branch(C, ab, s.t0, s.t0, kInf), beta,
                               DecayFamily::Exponential);
  }
  if (s.lambda0 <= v0)
    return single_branch_curve(s.t0, v, beta, DecayFamily::Exponential);

  // Both branches decay at the same rate when n == ab; the transient never
  // hands off and alone majorizes.
  if (std::abs(s.n - ab) <= 1e-14 * std::max(s.n, ab))
    return single_branch_curve(s.t0, exp_branch(s.lambda0, ab, s.t0, s.t0, kInf),
                               beta, DecayFamily::Exponential);

  const double t_bar =
      (std::log(s.c0 * s.d / (s.b * s.lambda0)) - ab * s.t0) / (s.n - ab);
  if (!(t_bar > s.t0))
    return single_branch_curve(s.t0, v, beta, DecayFamily::Exponential);
  Branch u = exp_branch(s.lambda0, ab, s.t0, s.t0, t_bar);
  return handoff_curve(s.t0, std::move(u), v, t_bar, beta,
                       DecayFamily::Exponential);
}

namespace {

Branch general_u_branch(const GeneralRateSpec& s, double C, double lo,
                        double hi) {
  Branch b;
  b.tag = "general-u";
  b.params = {{"C", C}};
  b.t_lo = lo;
  b.t_hi = hi;
  const auto phi = s.phi;
  const auto phi_inv = s.phi_inv;
  const auto F = s.F;
  const double a = s.a();
  const double t0 = s.t0;
  b.eval = [phi, phi_inv, F, a, t0, C](double t) {
    return phi_inv(phi(C) - a * (F(t) - F(t0)));
  };
  auto ev = b.eval;
  b.log_eval = [ev](double t) { return std::log(std::max(ev(t), 1e-300)); };
  return b;
}

Branch general_v_branch(const GeneralRateSpec& s, double lo, double hi) {
  Branch b;
  b.tag = "general-v";
  b.t_lo = lo;
  b.t_hi = hi;
  const auto psi_inv = s.psi_inv;
  const auto alpha = s.alpha;
  const auto gamma = s.gamma;
  const double c0 = s.c0;
  b.eval = [psi_inv, alpha, gamma, c0](double t) {
    const double at = alpha(t);
    if (at <= 0.0) throw DomainError("alpha vanished on the tracking branch");
    return psi_inv(c0 * gamma(t) / at);
  };
  auto ev = b.eval;
  b.log_eval = [ev](double t) { return std::log(std::max(ev(t), 1e-300)); };
  return b;
}

}  // namespace

MajorantCurve general_majorant(const GeneralRateSpec& spec, Regime regime) {
  spec.validate();
  const double t0 = spec.t0;
  auto far = [t0](double decades) {
    return t0 > 0.0 ? t0 * std::pow(10.0, decades) : t0 + std::pow(10.0, decades);
  };

  bool gamma_zero = true;
  for (double t : {t0, far(0.3), far(1.0), far(2.0)})
    if (spec.gamma(t) != 0.0) gamma_zero = false;
  if (gamma_zero) {
    if (spec.lambda0 == 0.0)
      return MajorantCurve(t0, {zero_branch(t0, kInf)}, {}, std::nullopt,
                           DecayFamily::None);
    return MajorantCurve(t0, {general_u_branch(spec, spec.lambda0, t0, kInf)},
                         {}, std::nullopt, DecayFamily::None);
  }

  Branch v = general_v_branch(spec, t0, kInf);
  const double v0 = v.eval(t0);
  Branch u_probe = general_u_branch(spec, v0, t0, kInf);

  if (regime == Regime::Auto) {
    // The far-field comparison licenses an eventual condition only, so
    // probe at several decades and require a consistent answer. A scan
    // showing more than two crossings breaks the curve-intersection
    // assumption the construction rests on.
    const auto scan = default_grid(t0, far(4.0), 128);
    if (count_sign_changes(u_probe.eval, v.eval, scan) > 2)
      throw RegimeError("more than two crossings between transient and "
                        "tracking branches");
    int verdict = 0;
    for (double dec : {2.0, 3.0, 4.0}) {
      const double diff = u_probe.eval(far(dec)) - v.eval(far(dec));
      const int sgn = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
      if (sgn == 0) continue;
      if (verdict == 0)
        verdict = sgn;
      else if (verdict != sgn)
        throw RegimeError("far-field probes disagree about the dominant branch");
    }
    if (verdict == 0)
      throw RegimeError("far-field probes cannot separate the branches");
    regime = verdict > 0 ? Regime::TransientDominates : Regime::TrackingDominates;
  }

  const double C = std::max(spec.lambda0, v0);
  if (regime == Regime::TransientDominates) {
    return MajorantCurve(t0, {general_u_branch(spec, C, t0, kInf)}, {},
                         std::nullopt, DecayFamily::None);
  }

  if (spec.lambda0 <= v0) {
    bool starts_below = true;
    for (double eps : {1e-4, 1e-3, 1e-2}) {
      const double t = t0 > 0.0 ? t0 * (1.0 + eps) : t0 + eps;
      if (u_probe.eval(t) > v.eval(t)) starts_below = false;
    }
    if (starts_below) {
      v.t_lo = t0;
      return MajorantCurve(t0, {std::move(v)}, {}, std::nullopt,
                           DecayFamily::None);
    }
  }

  Branch u = general_u_branch(spec, C, t0, kInf);
  const double t_bar = numeric_crossover(u, v, t0);
  u.t_lo = t0;
  u.t_hi = t_bar;
  v.t_lo = t_bar;
  std::vector<Branch> bs;
  bs.push_back(std::move(u));
  bs.push_back(std::move(v));
  return MajorantCurve(t0, std::move(bs), {t_bar}, std::nullopt,
                       DecayFamily::None);
}

}  // namespace banachflow::rates
