#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "banachflow/evolution/problem.hpp"
#include "banachflow/rates/spec.hpp"

namespace banachflow::harness {

/// One executable harness entry. The seed fully determines every
/// randomized draw the entry makes, so a fixed (config, seed) produces
/// byte-identical reports.
struct RunConfig {
  std::string command;  // majorant|oracle|verify-geometry|simulate|regularized|check
  std::string input;    // path of the command document, if any
  std::string output;   // artifact path; empty writes to stdout or nothing
  std::uint64_t seed = 0;
  std::vector<std::string> covers;  // catalog ids this entry exercises
  nlohmann::json overrides = nlohmann::json::object();

  static RunConfig from_json(const nlohmann::json& j,
                             const std::string& base_dir);
  nlohmann::ordered_json to_json() const;
};

using RateSpecVariant = std::variant<rates::PowerRateSpec, rates::ExpRateSpec>;

nlohmann::json read_json_file(const std::string& path);

/// {"family":"power", b,m,d,n,nu,c0,t0,lambda0} or {"family":"exp", ...}.
RateSpecVariant load_rate_spec(const nlohmann::json& j);
nlohmann::ordered_json rate_spec_json(const RateSpecVariant& spec);

evolution::EvolutionProblem load_problem(const nlohmann::json& j);

/// Columns written by the simulate command.
struct TrajectoryCsv {
  std::vector<double> t;
  std::vector<double> norm_x;
  std::vector<double> dist_anchor;
  std::vector<double> v;
};

void write_series_csv(const std::string& path,
                      const std::vector<std::pair<std::string,
                                                  const std::vector<double>*>>&
                          columns);
TrajectoryCsv read_trajectory_csv(const std::string& path);

}  // namespace banachflow::harness
