#pragma once

#include "banachflow/rates/spec.hpp"
#include "banachflow/rng.hpp"

namespace banachflow::rates {

/// Uniform draw from the supported hypothesis region of the power-family
/// parameterization selected by `lemma` (4..9). Draws that land in an
/// uncovered corner are pulled back by shrinking d, so every returned spec
/// feeds power_majorant without a ParameterError.
PowerRateSpec draw_power_spec(int lemma, Rng& rng);

/// Uniform draw for the constant-alpha exponential family (lemma 10).
ExpRateSpec draw_exp_spec(Rng& rng);

/// Draw conditioned to produce a two-branch bound with the closed-form
/// crossover: transient above the tracking level at t0 and a faster
/// transient decay.
PowerRateSpec draw_two_branch_linear_spec(Rng& rng);
ExpRateSpec draw_two_branch_exp_spec(Rng& rng);

/// Draw whose coefficients keep the tail level far below 1e-3 of the
/// initial value by t = 1e4 t0; used by the vanishing-limit suite.
PowerRateSpec draw_vanishing_spec(Rng& rng);

}  // namespace banachflow::rates
