#pragma once

#include <string>

namespace banachflow {

/// Parameterized scalar-of-time function used for coefficient schedules
/// (regularization weights, drift envelopes, forcing decay). Kept as data
/// rather than a closure so configs can round-trip through JSON and rate
/// checkers can read the decay exponents back.
struct ScalarSpec {
  enum class Kind { Zero, Constant, Power, Exponential };

  Kind kind = Kind::Zero;
  double coef = 0.0;
  double expo = 0.0;  // power: coef*t^expo; exponential: coef*exp(expo*t)

  double operator()(double t) const;

  bool is_zero() const { return kind == Kind::Zero || coef == 0.0; }

  /// "zero" | "const:c" | "pow:c:e" | "exp:c:e"
  static ScalarSpec parse(const std::string& text);
  std::string str() const;

  static ScalarSpec zero() { return {}; }
  static ScalarSpec constant(double c) { return {Kind::Constant, c, 0.0}; }
  static ScalarSpec power(double c, double e) { return {Kind::Power, c, e}; }
  static ScalarSpec exponential(double c, double e) {
    return {Kind::Exponential, c, e};
  }
};

}  // namespace banachflow
