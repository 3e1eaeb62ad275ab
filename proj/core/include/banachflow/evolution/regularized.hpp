#pragma once

#include <span>
#include <vector>

#include "banachflow/evolution/problem.hpp"

namespace banachflow::evolution {

/// Samples of the auxiliary stationary path A y + alpha(t) U y = f (limit
/// forcing). residuals holds the achieved dual-residual norms; every entry
/// satisfies residual <= 1e-9 (|f| + 1).
struct RegularizedPath {
  std::vector<double> times;
  std::vector<std::vector<double>> y;
  std::vector<double> residuals;
  std::vector<double> norm_y;
};

RegularizedPath regularized_path(const EvolutionProblem& problem,
                                 std::span<const double> t_grid);

}  // namespace banachflow::evolution
