#pragma once

#include <span>

#include "banachflow/rates/spec.hpp"

namespace banachflow::rates {

/// Root of f(t) = g(t) on [t_lo, t_hi]. A coarse 256-probe scan must see
/// exactly one sign change of f - g; bisection with secant refinement then
/// drives |f - g| below 1e-10 * max(|f|, |g|, 1). Deterministic.
///
/// Throws NoSignChangeError / MultipleSignChangeError when the scan sees
/// zero or more than one crossing.
double crossover_root(const ScalarFn& f, const ScalarFn& g, double t_lo,
                      double t_hi);

/// Strict sign changes of u - v across adjacent grid points; points where
/// the difference vanishes are skipped. At most two changes is consistent
/// with the two-intersection property the branch construction relies on.
/// The grid must have at least 64 points.
int count_sign_changes(const ScalarFn& u, const ScalarFn& v,
                       std::span<const double> grid);

}  // namespace banachflow::rates
