#include "banachflow/rates/dominance.hpp"

#include <algorithm>
#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::rates {

nlohmann::ordered_json BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass;
  j["slack"] = slack;
  j["max_violation"] = max_violation;
  j["worst_t"] = worst_t;
  j["worst_index"] = worst_index;
  j["margin_min"] = margin_min;
  j["margin_mean"] = margin_mean;
  j["points"] = points;
  return j;
}

BoundReport verify_dominance(std::span<const double> t,
                             std::span<const double> series,
                             const MajorantCurve& curve, double slack) {
  if (t.size() != series.size())
    throw GridError("series and grid length mismatch");
  if (t.empty()) throw GridError("empty series");

  BoundReport rep;
  rep.slack = slack;
  rep.points = t.size();
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.margin_min = std::numeric_limits<double>::infinity();

  double margin_sum = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double bound = curve.value(t[k]);
    const double denom = std::max(bound, kDominanceAbsFloor);
    const double violation = (series[k] - bound) / denom;
    if (violation > rep.max_violation) {
      rep.max_violation = violation;
      rep.worst_t = t[k];
      rep.worst_index = k;
    }
    const double margin = -violation;
    rep.margin_min = std::min(rep.margin_min, margin);
    margin_sum += margin;
  }
  rep.margin_mean = margin_sum / static_cast<double>(t.size());
  rep.pass = rep.max_violation <= slack;
  return rep;
}

}  // namespace banachflow::rates
