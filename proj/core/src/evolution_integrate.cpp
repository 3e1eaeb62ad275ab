#include "banachflow/evolution/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::evolution {

std::vector<double> Forcing::value(double t) const {
  std::vector<double> out = limit;
  if (!omega2.is_zero()) {
    const double w = omega2(t);
    for (size_t i = 0; i < out.size(); ++i) out[i] += w * direction[i];
  }
  return out;
}

Forcing Forcing::constant(std::vector<double> f) {
  Forcing out;
  out.limit = std::move(f);
  return out;
}

void EvolutionProblem::validate() const {
  if (static_cast<int>(x0.size()) != space.dim())
    throw DimensionError("x0 length does not match space dimension");
  if (op.dim != space.dim())
    throw DimensionError("operator dimension does not match space");
  if (static_cast<int>(forcing.limit.size()) != space.dim())
    throw DimensionError("forcing limit length mismatch");
  if (!forcing.omega2.is_zero() &&
      static_cast<int>(forcing.direction.size()) != space.dim())
    throw DimensionError("forcing drift direction length mismatch");
  if (reg.mode != RegularizationMode::None && reg.alpha.is_zero())
    throw ParameterError("regularized problem needs a positive alpha");
}

std::vector<double> EvolutionProblem::dual_rhs(
    double t, std::span<const double> phi) const {
  const auto x = space.inverse_duality_map(phi);
  auto ax = op.apply(t, space, x);
  auto f = forcing.value(t);
  std::vector<double> rhs(phi.size());
  switch (reg.mode) {
    case RegularizationMode::None:
      for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = f[i] - ax[i];
      break;
    case RegularizationMode::Factor: {
      const double a = reg.alpha(t);
      for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = -a * (ax[i] - f[i]);
      break;
    }
    case RegularizationMode::Additive:
    case RegularizationMode::Constant: {
      const double a = reg.alpha(t);
      for (size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = f[i] - ax[i] - a * phi[i];
      break;
    }
  }
  return rhs;
}

namespace {

struct Pass {
  std::vector<std::vector<double>> phi;
};

Pass integrate_pass(const EvolutionProblem& pb,
                    const std::vector<double>& times, int substeps,
                    double blowup_scale) {
  const size_t d = pb.x0.size();
  Pass pass;
  pass.phi.reserve(times.size());

  std::vector<double> phi = pb.space.duality_map(pb.x0);
  pass.phi.push_back(phi);

  std::vector<double> k1, k2, k3, k4, tmp(d);
  for (size_t s = 1; s < times.size(); ++s) {
    const double h = (times[s] - times[s - 1]) / substeps;
    double t = times[s - 1];
    for (int sub = 0; sub < substeps; ++sub) {
      k1 = pb.dual_rhs(t, phi);
      for (size_t i = 0; i < d; ++i) tmp[i] = phi[i] + 0.5 * h * k1[i];
      k2 = pb.dual_rhs(t + 0.5 * h, tmp);
      for (size_t i = 0; i < d; ++i) tmp[i] = phi[i] + 0.5 * h * k2[i];
      k3 = pb.dual_rhs(t + 0.5 * h, tmp);
      for (size_t i = 0; i < d; ++i) tmp[i] = phi[i] + h * k3[i];
      k4 = pb.dual_rhs(t + h, tmp);
      for (size_t i = 0; i < d; ++i)
        phi[i] += h * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) / 6.0;
      t += h;
    }
    if (pb.space.dual_norm(phi) > blowup_scale)
      throw BlowUpError("dual state norm exceeded 1e6 (1 + ||x0||)");
    pass.phi.push_back(phi);
  }
  return pass;
}

}  // namespace

Trajectory integrate(const EvolutionProblem& pb, double t_end,
                     const StepControl& ctrl) {
  pb.validate();
  std::vector<double> times;
  if (!ctrl.explicit_times.empty()) {
    times = ctrl.explicit_times;
    if (times.front() != pb.t0)
      throw GridError("explicit grid must start at t0");
  } else {
    if (!(t_end > pb.t0)) throw GridError("t_end must exceed t0");
    const GridKind kind =
        (ctrl.grid == GridKind::Log && pb.t0 > 0.0) ? GridKind::Log
                                                    : GridKind::Linear;
    times = make_grid(kind, pb.t0, t_end, ctrl.samples);
  }

  const double blowup_scale = 1e6 * (1.0 + pb.space.norm(pb.x0));
  const double floor = 1e-12 * (1.0 + pb.space.norm(pb.x0));

  Pass prev = integrate_pass(pb, times, 1, blowup_scale);
  int substeps = 1;
  for (int halving = 0; halving < ctrl.max_halvings; ++halving) {
    substeps *= 2;
    Pass next = integrate_pass(pb, times, substeps, blowup_scale);
    double worst = 0.0;
    std::vector<double> delta(pb.x0.size());
    for (size_t s = 0; s < times.size(); ++s) {
      for (size_t i = 0; i < delta.size(); ++i)
        delta[i] = next.phi[s][i] - prev.phi[s][i];
      const double scale =
          std::max(pb.space.dual_norm(next.phi[s]), floor);
      worst = std::max(worst, pb.space.dual_norm(delta) / scale);
    }
    if (worst < ctrl.rel_tol) {
      Trajectory traj;
      traj.times = std::move(times);
      traj.phi = std::move(next.phi);
      traj.x.reserve(traj.phi.size());
      traj.norm_x.reserve(traj.phi.size());
      for (const auto& phi : traj.phi) {
        traj.x.push_back(pb.space.inverse_duality_map(phi));
        traj.norm_x.push_back(pb.space.norm(traj.x.back()));
      }
      return traj;
    }
    prev = std::move(next);
  }
  throw StepSizeError("trajectory refinement did not converge");
}

}  // namespace banachflow::evolution
