#pragma once

#include <span>
#include <vector>

#include "banachflow/rates/spec.hpp"

namespace banachflow::rates {

/// Equality-case reference trajectory for the rate inequality: classical
/// RK4 on d(lambda)/dt = -alpha(t) psi(lambda) + gamma(t) along t_grid,
/// clamped at 0 from below (negative excursions are discretization
/// artifacts; lambda is nonnegative by assumption). Substeps per grid
/// interval double until two consecutive passes agree to 1e-8 relative at
/// every grid point; more than 20 doublings raises StepSizeError.
std::vector<double> oracle_ode(const ScalarFn& alpha, const ScalarFn& gamma,
                               const ScalarFn& psi, double lambda0,
                               std::span<const double> t_grid);

}  // namespace banachflow::rates
