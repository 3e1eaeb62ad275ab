#pragma once

#include <string>
#include <vector>

#include "banachflow/harness/config.hpp"
#include "banachflow/harness/report.hpp"

namespace banachflow::harness {

/// Exit contract: 0 all checks passed, 1 usage or configuration error,
/// 2 at least one mathematical check failed.
struct RunResult {
  int status = 0;
  nlohmann::ordered_json report;
};

RunResult run(const RunConfig& cfg);

struct SuiteOptions {
  int workers = 0;      // 0: BANACHFLOW_WORKERS env var or hardware count
  std::string out_dir;  // defaults next to the config directory
};

/// Runs every *.json entry of config_dir concurrently, writes per-entry
/// reports into out_dir, and aggregates a coverage table mapping each
/// catalog id to the entries that exercised it.
RunResult run_suite(const std::string& config_dir,
                    const SuiteOptions& options = {});

/// Catalog of certifiable statement ids (lemma1..lemma11, theorem1..6).
const std::vector<std::string>& coverage_catalog();

}  // namespace banachflow::harness
