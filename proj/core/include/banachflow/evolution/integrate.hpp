#pragma once

#include <vector>

#include "banachflow/evolution/problem.hpp"
#include "banachflow/grid.hpp"

namespace banachflow::evolution {

/// Sampled dual trajectory. The state advanced in time is phi = Ux; x is
/// recovered through the inverse duality map at every stored sample, so
/// |U(x_k) - phi_k| is roundoff-level by construction.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> phi;
  std::vector<std::vector<double>> x;
  std::vector<double> norm_x;  // per-sample diagnostics
};

struct StepControl {
  int samples = 512;
  GridKind grid = GridKind::Log;  // linear is used automatically when t0 <= 0
  std::vector<double> explicit_times;  // overrides samples/grid when set
  double rel_tol = 1e-8;
  int max_halvings = 20;
};

/// Classical 4th-order one-step advance of the dual state between output
/// samples; internal substeps double globally until two passes agree to
/// rel_tol at every sample. Raises BlowUpError when ||x|| exceeds
/// 1e6 (1 + ||x0||) and StepSizeError when refinement fails.
Trajectory integrate(const EvolutionProblem& problem, double t_end,
                     const StepControl& ctrl = {});

}  // namespace banachflow::evolution
