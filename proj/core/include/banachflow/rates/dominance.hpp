#pragma once

#include <cstddef>
#include <span>

#include "json.hpp"

#include "banachflow/rates/curve.hpp"

namespace banachflow::rates {

/// Grid comparison of an observed scalar series against a certified bound.
/// violation(t) = (series - bound) / max(bound, eps_abs); the report passes
/// when the worst violation stays within the relative slack.
struct BoundReport {
  bool pass = false;
  double slack = 1e-9;
  double max_violation = 0.0;
  double worst_t = 0.0;
  std::size_t worst_index = 0;
  double margin_min = 0.0;   // smallest bound - series gap, normalized
  double margin_mean = 0.0;
  std::size_t points = 0;

  nlohmann::ordered_json to_json() const;
};

inline constexpr double kDominanceSlack = 1e-9;
inline constexpr double kDominanceAbsFloor = 1e-12;

BoundReport verify_dominance(std::span<const double> t,
                             std::span<const double> series,
                             const MajorantCurve& curve,
                             double slack = kDominanceSlack);

}  // namespace banachflow::rates
