#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "banachflow/geometry/lp_space.hpp"
#include "banachflow/geometry/moduli.hpp"

namespace banachflow::geometry {

/// One checked inequality: lhs <= rhs with margin = rhs - lhs.
struct InequalityRecord {
  std::string id;
  std::string anchor;  // classical equation label, e.g. "2.17"
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;

  nlohmann::ordered_json to_json() const;
};

struct GeometryReport {
  std::vector<InequalityRecord> records;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Both Lyapunov envelopes plus the norm-gap recoveries for one pair.
/// Requires ||x|| <= R and ||y|| <= R for the constants' radius.
GeometryReport lyapunov_sandwich(const LpSpace& space,
                                 const GeometryConstants& k,
                                 std::span<const double> x,
                                 std::span<const double> y);

/// The duality-map inequality family: upper and lower pairing bounds in
/// both spaces, the two norm-gap transfers, plain monotonicity, the
/// Lyapunov-pairing comparison, and the parallelogram pair.
GeometryReport duality_inequalities(const LpSpace& space,
                                    const GeometryConstants& k,
                                    std::span<const double> x,
                                    std::span<const double> y);

/// Aggregated worst-case margins over `pairs` random vector pairs drawn
/// inside the radius-R ball (plus a few deterministic corner pairs).
/// Identical (space, constants, pairs, seed) inputs reproduce the report
/// bit for bit.
struct FuzzSummary {
  std::string id;
  std::string anchor;
  double worst_margin = 0.0;
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  std::uint64_t violations = 0;
  bool pass = false;
};

struct GeometryFuzzReport {
  double p = 0.0;
  int dim = 0;
  double L = 0.0;
  double R = 0.0;
  std::uint64_t pairs = 0;
  std::uint64_t seed = 0;
  std::vector<FuzzSummary> summaries;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

GeometryFuzzReport run_geometry_fuzz(const LpSpace& space,
                                     const GeometryConstants& k,
                                     std::uint64_t pairs, std::uint64_t seed);

}  // namespace banachflow::geometry
