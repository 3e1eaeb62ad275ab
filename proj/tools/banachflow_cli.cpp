// Command-line driver for majorant construction, geometry fuzzing, and
// evolution experiments. Exit codes: 0 all checks passed, 1 usage or
// config error, 2 mathematical check failure.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "banachflow/harness/run.hpp"

namespace {

using banachflow::harness::RunConfig;
using banachflow::harness::RunResult;

int finish(const RunResult& result, const std::string& report_path,
           bool quiet) {
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    out << result.report.dump(2) << "\n";
  } else if (!quiet) {
    std::cout << result.report.dump(2) << "\n";
  }
  return result.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decay-estimate certification harness for dual-space "
               "evolution runs"};
  app.require_subcommand(1);

  bool quiet = false;
  std::string report_path;
  app.add_flag("--quiet", quiet, "suppress the report on stdout");
  app.add_option("--report", report_path, "write the run report to this file");

  RunConfig cfg;

  auto* majorant = app.add_subcommand("majorant", "build a certified bound");
  majorant->add_option("--spec", cfg.input, "rate spec JSON")->required();
  majorant->add_option("--out", cfg.output, "curve JSON path");

  auto* oracle = app.add_subcommand("oracle", "equality-case reference series");
  oracle->add_option("--spec", cfg.input, "rate spec JSON")->required();
  std::string grid;
  oracle->add_option("--grid", grid, "grid descriptor kind:t0:t1:n");
  oracle->add_option("--out", cfg.output, "series CSV path");

  auto* geom = app.add_subcommand("verify-geometry", "inequality fuzz run");
  double p = 2.0, radius = 1.0, L = 3.18;
  int dim = 8;
  std::uint64_t pairs = 1000;
  geom->add_option("--p", p, "space exponent");
  geom->add_option("--dim", dim, "dimension");
  geom->add_option("--pairs", pairs, "random pairs per run");
  geom->add_option("--radius", radius, "ball radius R");
  geom->add_option("--L", L, "figure-of-merit constant");
  geom->add_option("--seed", cfg.seed, "draw seed");
  geom->add_option("--out", cfg.output, "report JSON path");

  auto* simulate = app.add_subcommand("simulate", "integrate a dual flow");
  simulate->add_option("--problem", cfg.input, "problem JSON")->required();
  double t_end = 0.0;
  int samples = 512;
  std::string sim_grid = "log";
  simulate->add_option("--t-end", t_end, "final time");
  simulate->add_option("--samples", samples, "output samples");
  simulate->add_option("--grid-kind", sim_grid, "log or lin");
  simulate->add_option("--out", cfg.output, "trajectory CSV path");

  auto* reg = app.add_subcommand("regularized", "stationary damped path");
  reg->add_option("--problem", cfg.input, "problem JSON")->required();
  std::string alpha, reg_grid;
  reg->add_option("--alpha", alpha, "alpha descriptor, e.g. pow:0.5:-0.5");
  reg->add_option("--grid", reg_grid, "grid descriptor kind:t0:t1:n");
  reg->add_option("--out", cfg.output, "path CSV");

  auto* check = app.add_subcommand("check", "certify a catalog statement");
  int theorem = 0, lemma = 0;
  std::string traj, problem, spec;
  double threshold = 1e-3, horizon = 0.0, c0 = 2.0;
  int draws = 0;
  check->add_option("--theorem", theorem, "theorem id 1..6");
  check->add_option("--lemma", lemma, "lemma id 1..11");
  check->add_option("--traj", traj, "trajectory CSV from simulate");
  check->add_option("--problem", problem, "problem JSON");
  check->add_option("--spec", spec, "rate spec JSON (lemma checks)");
  check->add_option("--draws", draws, "randomized draws (lemma checks)");
  check->add_option("--threshold", threshold, "convergence threshold");
  check->add_option("--horizon", horizon, "integration horizon");
  check->add_option("--c0", c0, "rate headroom parameter");
  check->add_option("--seed", cfg.seed, "draw seed");
  check->add_option("--input", cfg.input, "full check document JSON");

  auto* suite = app.add_subcommand("suite", "run a directory of configs");
  std::string dir, out_dir;
  int workers = 0;
  suite->add_option("--dir", dir, "config directory")->required();
  suite->add_option("--out-dir", out_dir, "artifact directory");
  suite->add_option("--workers", workers,
                    "worker threads (BANACHFLOW_WORKERS overrides)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (majorant->parsed()) {
      cfg.command = "majorant";
      return finish(banachflow::harness::run(cfg), report_path, quiet);
    }
    if (oracle->parsed()) {
      cfg.command = "oracle";
      if (!grid.empty()) cfg.overrides["grid"] = grid;
      return finish(banachflow::harness::run(cfg), report_path, quiet);
    }
    if (geom->parsed()) {
      cfg.command = "verify-geometry";
      cfg.overrides["p"] = p;
      cfg.overrides["dim"] = dim;
      cfg.overrides["pairs"] = pairs;
      cfg.overrides["radius"] = radius;
      cfg.overrides["L"] = L;
      return finish(banachflow::harness::run(cfg), report_path, quiet);
    }
    if (simulate->parsed()) {
      cfg.command = "simulate";
      if (t_end > 0.0) cfg.overrides["t_end"] = t_end;
      cfg.overrides["samples"] = samples;
      cfg.overrides["grid"] = sim_grid;
      return finish(banachflow::harness::run(cfg), report_path, quiet);
    }
    if (reg->parsed()) {
      cfg.command = "regularized";
      if (!alpha.empty()) cfg.overrides["alpha"] = alpha;
      if (!reg_grid.empty()) cfg.overrides["grid"] = reg_grid;
      return finish(banachflow::harness::run(cfg), report_path, quiet);
    }
    if (check->parsed()) {
      cfg.command = "check";
      if (cfg.input.empty()) {
        nlohmann::json doc;
        if (theorem > 0) {
          doc["theorem"] = theorem;
          if (problem.empty())
            throw banachflow::ConfigError("check --theorem needs --problem");
          doc["problem"] = problem;
          if (!traj.empty()) doc["traj"] = traj;
          if (horizon > 0.0) doc["horizon"] = horizon;
          doc["threshold"] = threshold;
          doc["c0"] = c0;
        } else if (lemma > 0) {
          doc["lemma"] = lemma;
          if (lemma == 11) {
            if (problem.empty())
              throw banachflow::ConfigError("check --lemma 11 needs --problem");
            doc["problem"] = problem;
          } else if (draws > 0) {
            doc["draws"] = draws;
          } else {
            if (spec.empty())
              throw banachflow::ConfigError(
                  "check --lemma needs --spec or --draws");
            doc["spec_path"] = spec;
          }
        } else {
          throw banachflow::ConfigError("check needs --theorem or --lemma");
        }
        cfg.overrides = doc;
      }
      return finish(banachflow::harness::run(cfg), report_path, quiet);
    }
    if (suite->parsed()) {
      banachflow::harness::SuiteOptions opt;
      opt.workers = workers;
      opt.out_dir = out_dir;
      return finish(banachflow::harness::run_suite(dir, opt), report_path,
                    quiet);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
