#include "banachflow/rates/curve.hpp"

#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::rates {

MajorantCurve::MajorantCurve(double t0, std::vector<Branch> branches,
                             std::vector<double> crossovers,
                             std::optional<double> asymptotic_exponent,
                             DecayFamily family)
    : t0_(t0),
      branches_(std::move(branches)),
      crossovers_(std::move(crossovers)),
      exponent_(asymptotic_exponent),
      family_(family) {
  if (branches_.empty()) throw ParameterError("curve needs at least one branch");
}

const Branch& MajorantCurve::branch_at(double t) const {
  if (t < t0_ * (1.0 - 1e-12) - 1e-300)
    throw DomainError("curve evaluated before its start time");
  for (const auto& b : branches_)
    if (b.contains(t)) return b;
  return branches_.back();
}

double MajorantCurve::value(double t) const { return branch_at(t).eval(t); }

double MajorantCurve::log_value(double t) const {
  return branch_at(t).log_eval(t);
}

nlohmann::ordered_json MajorantCurve::to_json() const {
  nlohmann::ordered_json j;
  j["branches"] = nlohmann::ordered_json::array();
  for (const auto& b : branches_) {
    nlohmann::ordered_json jb;
    jb["tag"] = b.tag;
    jb["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : b.params) jb["params"][k] = v;
    jb["t_lo"] = b.t_lo;
    if (std::isfinite(b.t_hi))
      jb["t_hi"] = b.t_hi;
    else
      jb["t_hi"] = nullptr;
    j["branches"].push_back(jb);
  }
  j["crossovers"] = crossovers_;
  if (exponent_)
    j["exponent"] = *exponent_;
  else
    j["exponent"] = nullptr;
  return j;
}

MajorantCurve scale_curve(const MajorantCurve& curve, double factor) {
  std::vector<Branch> scaled;
  scaled.reserve(curve.branches().size());
  const double log_factor = std::log(factor);
  for (const auto& b : curve.branches()) {
    Branch s = b;
    s.tag = b.tag + "-scaled";
    s.params["scale"] = factor;
    auto inner = b.eval;
    auto inner_log = b.log_eval;
    s.eval = [inner, factor](double t) { return factor * inner(t); };
    s.log_eval = [inner_log, log_factor](double t) {
      return log_factor + inner_log(t);
    };
    scaled.push_back(std::move(s));
  }
  return MajorantCurve(curve.t0(), std::move(scaled), curve.crossovers(),
                       curve.asymptotic_exponent(), curve.family());
}

}  // namespace banachflow::rates
