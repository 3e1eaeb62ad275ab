#include "banachflow/evolution/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "banachflow/errors.hpp"
#include "banachflow/evolution/stationary.hpp"
#include "banachflow/geometry/moduli.hpp"
#include "banachflow/rates/majorant.hpp"

namespace banachflow::evolution {

namespace {

using geometry::GeometryConstants;
using geometry::LpSpace;

std::vector<double> vec_diff(std::span<const double> a,
                             std::span<const double> b) {
  std::vector<double> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

struct Hypotheses {
  std::vector<std::string> notes;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    notes.push_back(std::string(cond ? "[ok] " : "[violated] ") + what);
    ok = ok && cond;
  }
};

bool uniformly_monotone(const OperatorSpec& op) {
  return op.mono_coef > 0.0 &&
         (op.kind == OperatorSpec::Kind::LinearSPD ||
          op.kind == OperatorSpec::Kind::DiagonalPower);
}

bool linear_kind(const OperatorSpec& op) {
  return op.kind == OperatorSpec::Kind::LinearSPD ||
         op.kind == OperatorSpec::Kind::LinearPSD;
}

/// Decay rate r of a power envelope coef * t^{-r}, if representable.
std::optional<double> power_decay_rate(const ScalarSpec& s) {
  if (s.is_zero()) return std::nullopt;
  if (s.kind == ScalarSpec::Kind::Power && s.expo < 0.0) return -s.expo;
  return std::nullopt;
}

bool decays(const ScalarSpec& s) {
  if (s.is_zero()) return true;
  if (s.kind == ScalarSpec::Kind::Power) return s.expo < 0.0;
  if (s.kind == ScalarSpec::Kind::Exponential) return s.expo < 0.0;
  return false;
}

double max_norm(const Trajectory& traj) {
  double r = 0.0;
  for (double n : traj.norm_x) r = std::max(r, n);
  return r;
}

}  // namespace

std::vector<double> lyapunov_trace(const LpSpace& space, const Trajectory& traj,
                                   std::span<const double> anchor) {
  std::vector<double> v;
  v.reserve(traj.phi.size());
  for (const auto& phi : traj.phi) v.push_back(space.lyapunov(phi, anchor));
  return v;
}

std::vector<double> lyapunov_trace(const LpSpace& space, const Trajectory& traj,
                                   const std::vector<std::vector<double>>& path) {
  if (path.size() != traj.phi.size())
    throw GridError("anchor path and trajectory grids do not align");
  std::vector<double> v;
  v.reserve(traj.phi.size());
  for (size_t k = 0; k < traj.phi.size(); ++k)
    v.push_back(space.lyapunov(traj.phi[k], path[k]));
  return v;
}

ChainRuleReport chain_rule_check(const EvolutionProblem& pb,
                                 const Trajectory& traj,
                                 const std::vector<std::vector<double>>& y_path) {
  const size_t n = traj.times.size();
  if (n < 5) throw GridError("chain-rule check needs at least 5 samples");
  if (y_path.size() != n)
    throw GridError("anchor path and trajectory grids do not align");
  const double h = traj.times[1] - traj.times[0];
  for (size_t k = 1; k < n; ++k)
    if (std::abs(traj.times[k] - traj.times[k - 1] - h) > 1e-9 * h)
      throw GridError("chain-rule check needs a uniform grid");

  std::vector<double> v = lyapunov_trace(pb.space, traj, y_path);

  ChainRuleReport rep;
  rep.grid_step = h;
  rep.interior_points = n - 2;
  for (size_t k = 1; k + 1 < n; ++k) {
    const double lhs = (v[k + 1] - v[k - 1]) / (2.0 * h);
    const auto dphi = pb.dual_rhs(traj.times[k], traj.phi[k]);
    std::vector<double> dy(pb.space.dim());
    for (size_t i = 0; i < dy.size(); ++i)
      dy[i] = (y_path[k + 1][i] - y_path[k - 1][i]) / (2.0 * h);
    const auto uy = pb.space.duality_map(y_path[k]);
    const auto uy_minus_ux = vec_diff(uy, traj.phi[k]);
    const double rhs = pb.space.pairing(dphi, vec_diff(traj.x[k], y_path[k])) +
                       pb.space.pairing(uy_minus_ux, dy);
    rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(lhs - rhs));
  }
  return rep;
}

rates::MajorantCurve composed_rate_bound(const EvolutionProblem& pb, double v0,
                                         double big_r, double norm_xbar,
                                         double c0) {
  const double p = pb.space.p();
  GeometryConstants k{3.18, big_r};
  const double kappa = monotonicity_kappa(pb.op, pb.space);
  const double sigma = pb.op.mono_coef * kappa;
  if (!(sigma > 0.0))
    throw HypothesisError("composed bound needs a uniformly monotone operator");
  const double e = pb.op.mono_expo;

  // psi(V) = sigma mu^{-1}(V)^e with mu bounded by K xi^2 (p >= 2) or
  // K xi^p (p < 2, on the ball of radius 2R), giving a clean power law.
  double nu, b_eff;
  if (p >= 2.0) {
    const double K = 8.0 + k.c1() * (p - 1.0) / 2.0;
    nu = e / 2.0;
    b_eff = sigma * std::pow(K, -e / 2.0);
  } else {
    const double K = 8.0 * std::pow(2.0 * big_r, 2.0 - p) + k.c1() / p;
    nu = e / p;
    b_eff = sigma * std::pow(K, -e / p);
  }

  // gamma(t) = (omega1(t) g(||xbar||) + omega2(t)) (R + ||xbar||), bounded
  // by a single power with the slowest decay rate present.
  double d_eff = 0.0;
  double n_eff = std::numeric_limits<double>::infinity();
  struct Term {
    double coef, rate;
  };
  std::vector<Term> terms;
  if (pb.op.drift && !pb.op.drift->omega1.is_zero()) {
    const auto r1 = power_decay_rate(pb.op.drift->omega1);
    if (!r1) throw HypothesisError("drift envelope must be a decaying power");
    terms.push_back({pb.op.drift->omega1.coef * pb.op.drift->g(norm_xbar), *r1});
  }
  if (!pb.forcing.omega2.is_zero()) {
    const auto r2 = power_decay_rate(pb.forcing.omega2);
    if (!r2) throw HypothesisError("forcing envelope must be a decaying power");
    terms.push_back({pb.forcing.omega2.coef, *r2});
  }
  for (const auto& t : terms) n_eff = std::min(n_eff, t.rate);
  for (const auto& t : terms)
    d_eff += t.coef * std::pow(pb.t0, n_eff - t.rate);
  d_eff *= (big_r + norm_xbar);

  rates::PowerRateSpec spec;
  spec.nu = nu;
  spec.c0 = c0;
  spec.t0 = pb.t0;
  spec.lambda0 = v0;
  if (pb.reg.mode == RegularizationMode::Factor) {
    const auto ra = power_decay_rate(pb.reg.alpha);
    const bool constant_alpha = pb.reg.alpha.kind == ScalarSpec::Kind::Constant;
    if (!ra && !constant_alpha)
      throw HypothesisError("factor-mode alpha must be a power or constant");
    const double m = ra ? *ra : 0.0;
    if (!(m < 1.0))
      throw HypothesisError("factor-mode alpha must decay slower than 1/t");
    const double a0 = pb.reg.alpha.coef;
    spec.b = b_eff * a0;
    spec.m = m;
    spec.d = d_eff * a0;
    spec.n = terms.empty() ? m + 1.0 : n_eff + m;
  } else {
    spec.b = b_eff;
    spec.m = 0.0;
    spec.d = d_eff;
    spec.n = terms.empty() ? 1.0 : n_eff;
  }
  return rates::power_majorant(spec);
}

nlohmann::ordered_json TheoremReport::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["pass"] = pass;
  j["inconclusive"] = inconclusive;
  j["hypotheses"] = hypothesis_notes;
  j["details"] = details;
  return j;
}

namespace {

TheoremReport inconclusive_report(TheoremReport rep, const Hypotheses& hyp) {
  rep.hypothesis_notes = hyp.notes;
  rep.inconclusive = true;
  rep.pass = false;
  return rep;
}

TheoremReport check_convergence(const EvolutionProblem& pb,
                                const Trajectory& traj,
                                const CheckParams& params, TheoremReport rep) {
  Hypotheses hyp;
  hyp.require(uniformly_monotone(pb.op), "uniformly monotone operator");
  hyp.require(pb.op.mono_expo > 1.0, "superlinear monotonicity modulus");
  hyp.require(!pb.op.drift || decays(pb.op.drift->omega1),
              "operator drift envelope decays");
  hyp.require(decays(pb.forcing.omega2), "forcing drift envelope decays");
  if (!hyp.ok) return inconclusive_report(std::move(rep), hyp);

  const auto xbar =
      stationary_solve(pb.space, pb.op, pb.forcing.limit);
  std::vector<double> dist;
  dist.reserve(traj.x.size());
  for (const auto& x : traj.x)
    dist.push_back(pb.space.norm(vec_diff(x, xbar)));

  // Envelope from the right: sup of the remaining tail at each sample.
  std::vector<double> env(dist.size());
  double running = 0.0;
  for (size_t k = dist.size(); k-- > 0;) {
    running = std::max(running, dist[k]);
    env[k] = running;
  }

  rep.hypothesis_notes = hyp.notes;
  rep.details["distance_initial"] = dist.front();
  rep.details["distance_final"] = dist.back();
  rep.details["envelope_mid"] = env[env.size() / 2];
  rep.details["threshold"] = params.threshold;
  rep.pass = env.back() <= params.threshold;
  return rep;
}

TheoremReport check_rate_composition(const EvolutionProblem& pb,
                                     const Trajectory& traj,
                                     const CheckParams& params,
                                     TheoremReport rep, bool factor_mode) {
  Hypotheses hyp;
  hyp.require(uniformly_monotone(pb.op), "uniformly monotone operator");
  hyp.require(pb.op.mono_expo > 1.0, "superlinear monotonicity modulus");
  if (factor_mode)
    hyp.require(pb.reg.mode == RegularizationMode::Factor,
                "factor-mode regularization");
  else
    hyp.require(pb.reg.mode == RegularizationMode::None,
                "unregularized dual equation");
  const bool drift_ok = !pb.op.drift || pb.op.drift->omega1.is_zero() ||
                        power_decay_rate(pb.op.drift->omega1).has_value();
  hyp.require(drift_ok, "operator drift envelope is a decaying power");
  hyp.require(pb.forcing.omega2.is_zero() ||
                  power_decay_rate(pb.forcing.omega2).has_value(),
              "forcing drift envelope is a decaying power");
  if (!hyp.ok) return inconclusive_report(std::move(rep), hyp);

  const auto xbar = stationary_solve(pb.space, pb.op, pb.forcing.limit);
  const double norm_xbar = pb.space.norm(xbar);
  const double big_r = std::max(max_norm(traj), norm_xbar);
  const auto v = lyapunov_trace(pb.space, traj, xbar);

  rates::MajorantCurve curve;
  try {
    curve = composed_rate_bound(pb, v.front(), big_r, norm_xbar, params.c0);
  } catch (const std::exception& err) {
    hyp.require(false, std::string("rate bound construction: ") + err.what());
    return inconclusive_report(std::move(rep), hyp);
  }

  const GeometryConstants k{3.18, big_r};
  double worst_v = -std::numeric_limits<double>::infinity();
  double worst_x = worst_v;
  bool pass = true;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double bound_v = curve.value(traj.times[i]);
    const double dist = pb.space.norm(vec_diff(traj.x[i], xbar));
    const double bound_x =
        2.0 * k.c2() *
        geometry::inverse_convexity(pb.space, k.L * std::max(bound_v, 0.0));
    const double slack_v =
        (v[i] - bound_v) / std::max(bound_v, rates::kDominanceAbsFloor);
    const double slack_x =
        (dist - bound_x) / std::max(bound_x, rates::kDominanceAbsFloor);
    worst_v = std::max(worst_v, slack_v);
    worst_x = std::max(worst_x, slack_x);
    if (slack_v > 1e-9 || slack_x > 1e-9) pass = false;
  }

  rep.hypothesis_notes = hyp.notes;
  rep.details["v0"] = v.front();
  rep.details["radius"] = big_r;
  rep.details["curve"] = curve.to_json();
  rep.details["worst_v_violation"] = worst_v;
  rep.details["worst_distance_violation"] = worst_x;
  rep.pass = pass;
  return rep;
}

TheoremReport check_exponential_envelope(const EvolutionProblem& pb,
                                         const Trajectory& traj,
                                         TheoremReport rep) {
  Hypotheses hyp;
  hyp.require(pb.reg.mode == RegularizationMode::Constant,
              "constant regularization mode");
  hyp.require(pb.reg.alpha.kind == ScalarSpec::Kind::Constant &&
                  pb.reg.alpha.coef > 0.0,
              "constant positive alpha");
  hyp.require(linear_kind(pb.op) ||
                  pb.op.kind == OperatorSpec::Kind::DiagonalPower,
              "monotone operator kind");
  if (!hyp.ok) return inconclusive_report(std::move(rep), hyp);

  const double alpha = pb.reg.alpha.coef;
  std::vector<double> zeros(pb.space.dim(), 0.0);
  const auto xbar = solve_regularized_point(pb.space, pb.op, pb.forcing.limit,
                                            alpha, zeros);
  const auto v = lyapunov_trace(pb.space, traj, xbar);
  const double v0 = v.front();
  const double floor = 1e-14 * std::max(1.0, v0);

  double worst = -std::numeric_limits<double>::infinity();
  bool pass = true;
  for (size_t i = 0; i < v.size(); ++i) {
    const double bound =
        v0 * std::exp(-alpha * (traj.times[i] - pb.t0)) * (1.0 + 1e-6);
    if (v[i] > bound + floor) pass = false;
    worst = std::max(worst, v[i] - bound);
  }

  rep.hypothesis_notes = hyp.notes;
  rep.details["v0"] = v0;
  rep.details["alpha"] = alpha;
  rep.details["worst_excess"] = worst;
  rep.pass = pass;
  return rep;
}

TheoremReport check_boundedness(const EvolutionProblem& pb,
                                const Trajectory& traj,
                                const CheckParams& params, TheoremReport rep) {
  Hypotheses hyp;
  bool nonneg = linear_kind(pb.op);
  if (nonneg && pb.op.kind == OperatorSpec::Kind::LinearPSD)
    nonneg = pb.op.smallest_eigenvalue() >= -1e-10;
  hyp.require(nonneg, "(Ax, x) >= 0 along the flow (linear PSD/SPD)");
  hyp.require(!pb.op.drift || pb.op.drift->omega1.is_zero(),
              "no operator drift");
  double f_limit_norm = pb.space.dual_norm(pb.forcing.limit);
  hyp.require(f_limit_norm == 0.0, "forcing limit vanishes");
  bool square_integrable = false;
  if (pb.forcing.omega2.is_zero())
    square_integrable = true;
  else if (pb.forcing.omega2.kind == ScalarSpec::Kind::Power)
    square_integrable = pb.forcing.omega2.expo < -0.5 && pb.t0 > 0.0;
  else if (pb.forcing.omega2.kind == ScalarSpec::Kind::Exponential)
    square_integrable = pb.forcing.omega2.expo < 0.0;
  hyp.require(square_integrable, "forcing is square-integrable in time");
  if (!hyp.ok) return inconclusive_report(std::move(rep), hyp);

  const double horizon = traj.times.back();
  const double sup_base = max_norm(traj);
  StepControl ctrl;
  ctrl.samples = params.samples;
  Trajectory longer = integrate(pb, 10.0 * horizon, ctrl);
  const double sup_long = max_norm(longer);

  rep.hypothesis_notes = hyp.notes;
  rep.details["sup_norm_base"] = sup_base;
  rep.details["sup_norm_10x"] = sup_long;
  rep.pass = sup_long <= 1.01 * sup_base + 1e-9;
  return rep;
}

TheoremReport check_regularized_convergence(const EvolutionProblem& pb,
                                            const Trajectory& traj,
                                            const CheckParams& params,
                                            TheoremReport rep) {
  Hypotheses hyp;
  hyp.require(pb.reg.mode == RegularizationMode::Additive,
              "additive regularization mode");
  const bool alpha_power = pb.reg.alpha.kind == ScalarSpec::Kind::Power &&
                           pb.reg.alpha.coef > 0.0 && pb.reg.alpha.expo < 0.0 &&
                           pb.reg.alpha.expo > -1.0;
  hyp.require(alpha_power, "alpha(t) is a power decaying slower than 1/t");
  hyp.require(linear_kind(pb.op), "linear monotone operator");
  // For a power weight |alpha'| / alpha^2 = (|e|/c) t^{-1-e} -> 0 given
  // e > -1; sampled endpoints are recorded below.
  bool drift_slower = true;
  for (const ScalarSpec* w :
       {pb.op.drift ? &pb.op.drift->omega1 : nullptr, &pb.forcing.omega2}) {
    if (w == nullptr || w->is_zero()) continue;
    if (w->kind == ScalarSpec::Kind::Exponential && w->expo < 0.0) continue;
    const auto r = power_decay_rate(*w);
    if (!r || !(*r > -pb.reg.alpha.expo)) drift_slower = false;
  }
  hyp.require(drift_slower, "perturbations decay faster than alpha");
  if (!hyp.ok) return inconclusive_report(std::move(rep), hyp);

  std::vector<double> xstar;
  try {
    xstar = min_norm_solution(pb.space, pb.op, pb.forcing.limit);
  } catch (const std::exception& err) {
    hyp.require(false, std::string("limit equation: ") + err.what());
    return inconclusive_report(std::move(rep), hyp);
  }

  const auto path = regularized_path(pb, traj.times);
  const auto v = lyapunov_trace(pb.space, traj, path.y);

  bool monotone = true;
  std::vector<double> dist;
  dist.reserve(path.y.size());
  for (const auto& y : path.y)
    dist.push_back(pb.space.norm(vec_diff(y, xstar)));
  for (size_t k = 1; k < dist.size(); ++k)
    if (dist[k] > dist[k - 1] * (1.0 + 1e-9) + 1e-12) monotone = false;
  const bool progress = dist.back() <= 0.5 * dist.front() + 1e-12;

  // Diagnostic fit of the path-speed constant ||dy/dt|| alpha / |alpha'|.
  double r4 = 0.0;
  for (size_t k = 1; k + 1 < path.y.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k - 1];
    std::vector<double> dy(pb.space.dim());
    for (size_t i = 0; i < dy.size(); ++i)
      dy[i] = (path.y[k + 1][i] - path.y[k - 1][i]) / dt;
    const double t = traj.times[k];
    const double a = pb.reg.alpha(t);
    const double da =
        std::abs(pb.reg.alpha.expo) * pb.reg.alpha.coef *
        std::pow(t, pb.reg.alpha.expo - 1.0);
    if (da > 0.0) r4 = std::max(r4, pb.space.norm(dy) * a / da);
  }

  const double a0 = pb.reg.alpha(pb.t0);
  const double aT = pb.reg.alpha(traj.times.back());
  rep.hypothesis_notes = hyp.notes;
  rep.details["v_final"] = v.back();
  rep.details["threshold"] = params.threshold;
  rep.details["path_distance_initial"] = dist.front();
  rep.details["path_distance_final"] = dist.back();
  rep.details["path_monotone"] = monotone;
  rep.details["alpha_prime_over_alpha_sq_t0"] =
      std::abs(pb.reg.alpha.expo) / (a0 * pb.t0);
  rep.details["alpha_prime_over_alpha_sq_end"] =
      std::abs(pb.reg.alpha.expo) / (aT * traj.times.back());
  rep.details["r4_fit"] = r4;
  rep.pass = v.back() <= params.threshold && monotone && progress;
  return rep;
}

}  // namespace

TheoremReport check_theorem(const EvolutionProblem& pb, const Trajectory& traj,
                            int theorem, const CheckParams& params) {
  TheoremReport rep;
  rep.id = "theorem" + std::to_string(theorem);
  switch (theorem) {
    case 1:
      return check_convergence(pb, traj, params, std::move(rep));
    case 2:
      return check_rate_composition(pb, traj, params, std::move(rep), false);
    case 3:
      return check_rate_composition(pb, traj, params, std::move(rep), true);
    case 4:
      return check_exponential_envelope(pb, traj, std::move(rep));
    case 5:
      return check_boundedness(pb, traj, params, std::move(rep));
    case 6:
      return check_regularized_convergence(pb, traj, params, std::move(rep));
    default:
      throw ParameterError("theorem id must lie in 1..6");
  }
}

TheoremReport check_theorem(const EvolutionProblem& pb, int theorem,
                            const CheckParams& params) {
  const double horizon =
      params.horizon > 0.0 ? params.horizon : 1e3 * std::max(pb.t0, 1.0);
  StepControl ctrl;
  ctrl.samples = params.samples;
  return check_theorem(pb, integrate(pb, horizon, ctrl), theorem, params);
}

}  // namespace banachflow::evolution
