#include "banachflow/evolution/regularized.hpp"

#include "banachflow/errors.hpp"
#include "banachflow/evolution/stationary.hpp"

namespace banachflow::evolution {

RegularizedPath regularized_path(const EvolutionProblem& pb,
                                 std::span<const double> t_grid) {
  pb.validate();
  if (t_grid.empty()) throw GridError("regularized path needs a grid");
  if (pb.reg.alpha.is_zero())
    throw ParameterError("regularized path needs alpha(t) > 0");

  const auto& f = pb.forcing.limit;
  const double tol = 1e-9;
  RegularizedPath path;
  path.times.assign(t_grid.begin(), t_grid.end());
  path.y.reserve(t_grid.size());
  path.residuals.reserve(t_grid.size());
  path.norm_y.reserve(t_grid.size());

  std::vector<double> warm(pb.space.dim(), 0.0);
  for (double t : t_grid) {
    const double alpha = pb.reg.alpha(t);
    if (!(alpha > 0.0))
      throw HypothesisError("alpha(t) must stay positive along the grid");
    auto y = solve_regularized_point(pb.space, pb.op, f, alpha, warm, tol);
    auto r = pb.op.apply_limit(y);
    const auto uy = pb.space.duality_map(y);
    for (size_t i = 0; i < r.size(); ++i) r[i] += alpha * uy[i] - f[i];
    path.residuals.push_back(pb.space.dual_norm(r));
    path.norm_y.push_back(pb.space.norm(y));
    warm = y;
    path.y.push_back(std::move(y));
  }
  return path;
}

}  // namespace banachflow::evolution
