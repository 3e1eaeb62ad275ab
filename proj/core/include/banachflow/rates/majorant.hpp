#pragma once

#include "banachflow/rates/curve.hpp"
#include "banachflow/rates/spec.hpp"

namespace banachflow::rates {

/// Which branch dominates for large t. TransientDominates means the
/// transient bound u(t, v0) stays above the tracking level v(t) at
/// infinity, so u(t, C) alone majorizes; TrackingDominates means v(t)
/// eventually takes over, yielding either v alone or u handing off to v at
/// the crossover. Auto decides by probing u - v at 1e2, 1e3, 1e4 times t0.
enum class Regime { Auto, TransientDominates, TrackingDominates };

/// Piecewise bound for a general functional spec.
MajorantCurve general_majorant(const GeneralRateSpec& spec,
                               Regime regime = Regime::Auto);

/// Closed-form bounds for the power family alpha = b/t^m, gamma = d/t^n,
/// psi = lambda^nu. Dispatches on (m, nu) and the case conditions of the
/// matching parameterization; throws ParameterError when the coefficients
/// fall in no supported hypothesis region.
MajorantCurve power_majorant(const PowerRateSpec& spec);

/// Closed-form bound for constant alpha = b with gamma = d e^{-n t}; the
/// tail decays like e^{-beta t} with beta = min(a b, n).
MajorantCurve exp_majorant(const ExpRateSpec& spec);

}  // namespace banachflow::rates
