#pragma once

#include <span>
#include <vector>

#include "banachflow/evolution/operator.hpp"
#include "banachflow/geometry/lp_space.hpp"

namespace banachflow::evolution {

/// Solves A y + alpha U y = f by damped Newton steps on the dual residual
/// (alpha = 0 gives the plain stationary equation A y = f). Stops when the
/// dual residual norm falls below tol (1 + |f|); raises SolverStallError
/// when 100 iterations fail to halve the residual.
std::vector<double> solve_regularized_point(const geometry::LpSpace& space,
                                            const OperatorSpec& op,
                                            std::span<const double> f,
                                            double alpha,
                                            std::span<const double> warm_start,
                                            double tol = 1e-11);

std::vector<double> stationary_solve(const geometry::LpSpace& space,
                                     const OperatorSpec& op,
                                     std::span<const double> f,
                                     double tol = 1e-11);

/// Minimum-l^p-norm solution of M x = f for a symmetric PSD matrix kind
/// with nontrivial kernel. The particular solution comes from the spectral
/// pseudoinverse; the kernel component is chosen so that Ux is orthogonal
/// to the kernel, which is the stationarity condition of ||x||_p on the
/// solution set. Raises HypothesisError when f is not in the range.
std::vector<double> min_norm_solution(const geometry::LpSpace& space,
                                      const OperatorSpec& op,
                                      std::span<const double> f);

/// Orthonormal kernel basis (columns), row-major dim x k. Empty when the
/// matrix has trivial kernel.
std::vector<std::vector<double>> kernel_basis(const OperatorSpec& op,
                                              double rel_tol = 1e-10);

}  // namespace banachflow::evolution
