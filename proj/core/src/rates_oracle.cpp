#include "banachflow/rates/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::rates {

namespace {

std::vector<double> integrate_pass(const ScalarFn& alpha, const ScalarFn& gamma,
                                   const ScalarFn& psi, double lambda0,
                                   std::span<const double> t_grid,
                                   int substeps) {
  std::vector<double> out;
  out.reserve(t_grid.size());
  out.push_back(lambda0);

  auto rhs = [&](double t, double lam) {
    return -alpha(t) * psi(std::max(lam, 0.0)) + gamma(t);
  };

  double lam = lambda0;
  for (size_t k = 1; k < t_grid.size(); ++k) {
    const double h = (t_grid[k] - t_grid[k - 1]) / substeps;
    double t = t_grid[k - 1];
    for (int s = 0; s < substeps; ++s) {
      const double k1 = rhs(t, lam);
      const double k2 = rhs(t + 0.5 * h, lam + 0.5 * h * k1);
      const double k3 = rhs(t + 0.5 * h, lam + 0.5 * h * k2);
      const double k4 = rhs(t + h, lam + h * k3);
      lam += h * (k1 + 2.0 * (k2 + k3) + k4) / 6.0;
      lam = std::max(lam, 0.0);
      t += h;
    }
    out.push_back(lam);
  }
  return out;
}

}  // namespace

std::vector<double> oracle_ode(const ScalarFn& alpha, const ScalarFn& gamma,
                               const ScalarFn& psi, double lambda0,
                               std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw GridError("oracle grid needs at least 2 points");
  for (size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1]))
      throw GridError("oracle grid must be strictly increasing");
  if (!(lambda0 >= 0.0)) throw ParameterError("lambda0 must be nonnegative");

  const double floor = 1e-12 * (1.0 + lambda0);
  std::vector<double> prev =
      integrate_pass(alpha, gamma, psi, lambda0, t_grid, 1);
  int substeps = 1;
  for (int halving = 0; halving < 20; ++halving) {
    substeps *= 2;
    std::vector<double> next =
        integrate_pass(alpha, gamma, psi, lambda0, t_grid, substeps);
    double worst = 0.0;
    for (size_t k = 0; k < next.size(); ++k) {
      const double scale = std::max(std::abs(next[k]), floor);
      worst = std::max(worst, std::abs(next[k] - prev[k]) / scale);
    }
    if (worst < 1e-8) return next;
    prev = std::move(next);
  }
  throw StepSizeError("oracle step refinement did not converge in 20 halvings");
}

}  // namespace banachflow::rates
