#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace banachflow::rates {

/// One analytic piece of a certified bound, valid on [t_lo, t_hi).
struct Branch {
  std::string tag;
  std::map<std::string, double> params;
  double t_lo = 0.0;
  double t_hi = std::numeric_limits<double>::infinity();
  std::function<double(double)> eval;
  std::function<double(double)> log_eval;  // log of the bound, underflow-safe

  bool contains(double t) const { return t >= t_lo && t < t_hi; }
};

enum class DecayFamily { None, Power, Exponential };

/// Certified piecewise upper bound for solutions of
/// d(lambda)/dt <= -alpha(t) psi(lambda) + gamma(t).
/// Branch intervals partition [t0, inf); adjacent branches agree at each
/// crossover by construction.
class MajorantCurve {
 public:
  MajorantCurve() = default;
  MajorantCurve(double t0, std::vector<Branch> branches,
                std::vector<double> crossovers,
                std::optional<double> asymptotic_exponent,
                DecayFamily family);

  double value(double t) const;
  double log_value(double t) const;

  const std::vector<Branch>& branches() const { return branches_; }
  const std::vector<double>& crossovers() const { return crossovers_; }
  std::optional<double> asymptotic_exponent() const { return exponent_; }
  DecayFamily family() const { return family_; }
  double t0() const { return t0_; }

  nlohmann::ordered_json to_json() const;

 private:
  const Branch& branch_at(double t) const;

  double t0_ = 0.0;
  std::vector<Branch> branches_;
  std::vector<double> crossovers_;
  std::optional<double> exponent_;
  DecayFamily family_ = DecayFamily::None;
};

/// Copy of `curve` with every branch multiplied by `factor`. Used by the
/// harness to plant deliberately corrupted bounds in failure-detection runs.
MajorantCurve scale_curve(const MajorantCurve& curve, double factor);

}  // namespace banachflow::rates
