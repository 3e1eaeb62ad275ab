#pragma once

#include <stdexcept>
#include <string>

namespace banachflow {

/// Vector length does not match the space dimension.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A function was evaluated outside its domain of definition.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Inversion target lies outside [f(lo), f(hi)].
struct BracketError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Parameters fall outside every supported hypothesis region.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoSignChangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// More than one sign change where the branch construction needs a
/// single crossing.
struct MultipleSignChangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Probing could not decide which branch dominates at large times.
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverStallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A checker's hypothesis list is not satisfied by the supplied problem.
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed run configuration or input document.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace banachflow
