#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "banachflow/evolution/integrate.hpp"
#include "banachflow/evolution/regularized.hpp"
#include "banachflow/rates/curve.hpp"

namespace banachflow::evolution {

/// V(phi_k, anchor) along the trajectory.
std::vector<double> lyapunov_trace(const geometry::LpSpace& space,
                                   const Trajectory& traj,
                                   std::span<const double> anchor);

/// V(phi_k, y_k) against a moving anchor sampled on the same grid.
std::vector<double> lyapunov_trace(const geometry::LpSpace& space,
                                   const Trajectory& traj,
                                   const std::vector<std::vector<double>>& path);

struct ChainRuleReport {
  double max_discrepancy = 0.0;
  double grid_step = 0.0;
  std::size_t interior_points = 0;
};

/// Central-difference dV/dt against the differentiated form
/// (d(phi)/dt, x - y) + (Uy - Ux, dy/dt), with d(phi)/dt taken from the
/// equation's right-hand side and dy/dt central-differenced. Needs a
/// uniform trajectory grid with at least 5 samples.
ChainRuleReport chain_rule_check(const EvolutionProblem& problem,
                                 const Trajectory& traj,
                                 const std::vector<std::vector<double>>& y_path);

struct CheckParams {
  double horizon = 0.0;     // 0 picks 1e3 * max(t0, 1)
  double threshold = 1e-3;  // convergence threshold at the horizon
  double c0 = 2.0;          // headroom parameter of the composed rate bound
  int samples = 600;
};

struct TheoremReport {
  std::string id;
  bool pass = false;
  bool inconclusive = false;
  std::vector<std::string> hypothesis_notes;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

/// Dispatches on the stabilization statement being certified (1-6). The
/// hypothesis checklist is evaluated first; a violated hypothesis marks
/// the run inconclusive instead of failing it.
TheoremReport check_theorem(const EvolutionProblem& problem,
                            const Trajectory& traj, int theorem,
                            const CheckParams& params = {});

TheoremReport check_theorem(const EvolutionProblem& problem, int theorem,
                            const CheckParams& params = {});

/// The decay bound on V composed from the problem's monotonicity record
/// and drift envelopes; exposed so callers can overlay it on traces.
rates::MajorantCurve composed_rate_bound(const EvolutionProblem& problem,
                                         double v0, double big_r,
                                         double norm_xbar, double c0);

}  // namespace banachflow::evolution
