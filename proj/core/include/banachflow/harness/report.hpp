#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace banachflow::harness {

struct CheckRecord {
  std::string id;
  std::string anchor;  // catalog label the check certifies
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::string error;  // module error surfaced during the check, if any
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

/// Report for one harness entry; overall pass means every record passed.
struct VerificationReport {
  nlohmann::ordered_json config_echo;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;

  bool overall_pass() const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace banachflow::harness
