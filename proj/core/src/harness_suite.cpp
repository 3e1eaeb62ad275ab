#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "banachflow/errors.hpp"
#include "banachflow/harness/run.hpp"

namespace banachflow::harness {

namespace fs = std::filesystem;

const std::vector<std::string>& coverage_catalog() {
  static const std::vector<std::string> ids = {
      "lemma1",   "lemma2",   "lemma3",   "lemma4",   "lemma5",  "lemma6",
      "lemma7",   "lemma8",   "lemma9",   "lemma10",  "lemma11", "theorem1",
      "theorem2", "theorem3", "theorem4", "theorem5", "theorem6"};
  return ids;
}

namespace {

int worker_count(const SuiteOptions& opt, size_t entries) {
  int n = opt.workers;
  if (n <= 0) {
    if (const char* env = std::getenv("BANACHFLOW_WORKERS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return std::min<int>(n, std::max<size_t>(entries, 1));
}

}  // namespace

RunResult run_suite(const std::string& config_dir, const SuiteOptions& opt) {
  RunResult result;
  if (!fs::is_directory(config_dir)) {
    result.status = 1;
    result.report = {{"error", "config directory '" + config_dir + "' not found"}};
    return result;
  }

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(config_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  const std::string out_dir =
      opt.out_dir.empty() ? (fs::path(config_dir) / "out").string() : opt.out_dir;
  fs::create_directories(out_dir);

  struct Entry {
    std::string name;
    RunConfig cfg;
    RunResult result;
    std::string parse_error;
  };
  std::vector<Entry> entries(files.size());
  for (size_t i = 0; i < files.size(); ++i) {
    entries[i].name = fs::path(files[i]).stem().string();
    try {
      entries[i].cfg = RunConfig::from_json(read_json_file(files[i]), config_dir);
      if (entries[i].cfg.output.empty() &&
          entries[i].cfg.command != "check")
        entries[i].cfg.output =
            (fs::path(out_dir) / (entries[i].name + ".artifact")).string();
    } catch (const std::exception& err) {
      entries[i].parse_error = err.what();
    }
  }

  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= entries.size()) return;
      if (!entries[i].parse_error.empty()) {
        entries[i].result.status = 1;
        entries[i].result.report = {{"error", entries[i].parse_error}};
        continue;
      }
      entries[i].result = run(entries[i].cfg);
    }
  };
  {
    std::vector<std::thread> pool;
    const int n = worker_count(opt, entries.size());
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  // Aggregate in name order so the report is independent of scheduling.
  nlohmann::ordered_json report;
  report["config_dir"] = config_dir;
  report["entries"] = nlohmann::ordered_json::array();
  std::map<std::string, std::vector<std::string>> coverage;
  bool any_fail = false;
  for (auto& e : entries) {
    nlohmann::ordered_json je;
    je["name"] = e.name;
    je["command"] = e.cfg.command.empty() ? "?" : e.cfg.command;
    je["status"] = e.result.status;
    report["entries"].push_back(je);
    if (e.result.status != 0) any_fail = true;
    for (const auto& id : e.cfg.covers) coverage[id].push_back(e.name);
    const std::string path =
        (fs::path(out_dir) / (e.name + ".report.json")).string();
    std::ofstream out(path, std::ios::binary);
    out << e.result.report.dump(2) << "\n";
  }

  nlohmann::ordered_json jcov = nlohmann::ordered_json::object();
  std::vector<std::string> uncovered;
  for (const auto& id : coverage_catalog()) {
    auto it = coverage.find(id);
    if (it == coverage.end()) {
      jcov[id] = nlohmann::ordered_json::array();
      uncovered.push_back(id);
    } else {
      jcov[id] = it->second;
    }
  }
  report["coverage"] = jcov;
  if (entries.empty())
    report["warnings"] = {"no configs found: nothing covered"};
  else if (!uncovered.empty()) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const auto& id : uncovered) w.push_back("no coverage for " + id);
    report["warnings"] = w;
  }
  report["pass"] = !any_fail;

  result.status = any_fail ? 2 : 0;
  result.report = std::move(report);
  return result;
}

}  // namespace banachflow::harness
