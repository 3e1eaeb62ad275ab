#include "banachflow/harness/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "banachflow/errors.hpp"
#include "banachflow/evolution/analysis.hpp"
#include "banachflow/evolution/stationary.hpp"
#include "banachflow/geometry/reports.hpp"
#include "banachflow/grid.hpp"
#include "banachflow/rates/dominance.hpp"
#include "banachflow/rates/majorant.hpp"
#include "banachflow/rates/oracle.hpp"
#include "banachflow/rates/root.hpp"
#include "banachflow/rates/sampling.hpp"

namespace banachflow::harness {

namespace {

namespace fs = std::filesystem;

nlohmann::ordered_json CheckRecordJson(const CheckRecord& r) { return r.to_json(); }

void write_text(const std::string& path, const std::string& text) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string dirname_of(const std::string& path) {
  const fs::path p(path);
  return p.has_parent_path() ? p.parent_path().string() : std::string();
}

std::string resolve_near(const std::string& anchor_file,
                         const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  const std::string dir = dirname_of(anchor_file);
  return dir.empty() ? path : (fs::path(dir) / p).string();
}

struct OracleSeries {
  std::vector<double> t;
  std::vector<double> value;
};

OracleSeries run_rate_oracle(const RateSpecVariant& spec,
                             const std::vector<double>& grid) {
  OracleSeries out;
  out.t = grid;
  if (const auto* p = std::get_if<rates::PowerRateSpec>(&spec)) {
    const auto g = p->general();
    out.value = rates::oracle_ode(g.alpha, g.gamma, g.psi, g.lambda0, grid);
  } else {
    const auto& e = std::get<rates::ExpRateSpec>(spec);
    const double b = e.b, d = e.d, n = e.n;
    out.value = rates::oracle_ode([b](double) { return b; },
                                  [d, n](double t) { return d * std::exp(-n * t); },
                                  [](double lam) { return lam; }, e.lambda0, grid);
  }
  return out;
}

std::vector<double> default_rate_grid(const RateSpecVariant& spec, int points) {
  if (const auto* p = std::get_if<rates::PowerRateSpec>(&spec))
    return log_grid(p->t0, 100.0 * p->t0, points);
  const auto& e = std::get<rates::ExpRateSpec>(spec);
  if (e.t0 > 0.0) return log_grid(e.t0, 100.0 * e.t0, points);
  return linear_grid(e.t0, e.t0 + 50.0, points);
}

rates::MajorantCurve build_curve(const RateSpecVariant& spec) {
  if (const auto* p = std::get_if<rates::PowerRateSpec>(&spec))
    return rates::power_majorant(*p);
  return rates::exp_majorant(std::get<rates::ExpRateSpec>(spec));
}

double spec_t0(const RateSpecVariant& spec) {
  if (const auto* p = std::get_if<rates::PowerRateSpec>(&spec)) return p->t0;
  return std::get<rates::ExpRateSpec>(spec).t0;
}

// ---------------------------------------------------------------- majorant

void cmd_majorant(const RunConfig& cfg, VerificationReport& rep) {
  const auto doc = cfg.input.empty() ? cfg.overrides.at("spec")
                                     : read_json_file(cfg.input);
  CheckRecord rec;
  rec.id = "majorant-build";
  try {
    const auto spec = load_rate_spec(doc);
    const auto curve = build_curve(spec);
    rec.pass = true;
    rec.detail["branches"] = curve.branches().size();
    nlohmann::ordered_json artifact = curve.to_json();
    artifact["spec"] = rate_spec_json(spec);
    if (!cfg.output.empty())
      write_text(cfg.output, artifact.dump(2) + "\n");
    else
      rec.detail["curve"] = artifact;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& err) {
    rec.pass = false;
    rec.error = err.what();
  }
  rep.records.push_back(std::move(rec));
}

// ------------------------------------------------------------------ oracle

void cmd_oracle(const RunConfig& cfg, VerificationReport& rep) {
  const auto doc = cfg.input.empty() ? cfg.overrides.at("spec")
                                     : read_json_file(cfg.input);
  const auto spec = load_rate_spec(doc);
  std::vector<double> grid;
  if (cfg.overrides.contains("grid"))
    grid = parse_grid(cfg.overrides.at("grid").get<std::string>());
  else
    grid = default_rate_grid(spec, 1000);
  if (grid.front() != spec_t0(spec))
    throw ConfigError("oracle grid must start at the spec's t0");

  CheckRecord rec;
  rec.id = "oracle-run";
  try {
    const auto series = run_rate_oracle(spec, grid);
    rec.pass = true;
    rec.detail["points"] = series.t.size();
    rec.detail["final_value"] = series.value.back();
    if (!cfg.output.empty())
      write_series_csv(cfg.output, {{"t", &series.t}, {"value", &series.value}});
  } catch (const std::exception& err) {
    rec.pass = false;
    rec.error = err.what();
  }
  rep.records.push_back(std::move(rec));
}

// --------------------------------------------------------- verify-geometry

void cmd_verify_geometry(const RunConfig& cfg, VerificationReport& rep) {
  const double p = cfg.overrides.value("p", 2.0);
  const int dim = cfg.overrides.value("dim", 8);
  const std::uint64_t pairs = cfg.overrides.value("pairs", std::uint64_t{1000});
  const double radius = cfg.overrides.value("radius", 1.0);
  const double L = cfg.overrides.value("L", 3.18);

  geometry::LpSpace space(p, dim);
  geometry::GeometryConstants k{L, radius};
  const auto fuzz = geometry::run_geometry_fuzz(space, k, pairs, cfg.seed);
  for (const auto& s : fuzz.summaries) {
    CheckRecord rec;
    rec.id = s.id;
    rec.anchor = s.anchor;
    rec.lhs = s.worst_lhs;
    rec.rhs = s.worst_rhs;
    rec.margin = s.worst_margin;
    rec.pass = s.pass;
    if (s.violations > 0) rec.detail["violations"] = s.violations;
    rep.records.push_back(std::move(rec));
  }
  if (!cfg.output.empty()) write_text(cfg.output, fuzz.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const RunConfig& cfg, VerificationReport& rep) {
  const auto doc = read_json_file(cfg.input);
  auto pb = load_problem(doc);
  const double t_end =
      cfg.overrides.value("t_end", 1e3 * std::max(pb.t0, 1.0));
  evolution::StepControl ctrl;
  ctrl.samples = cfg.overrides.value("samples", 512);
  if (cfg.overrides.value("grid", std::string("log")) == "lin")
    ctrl.grid = GridKind::Linear;

  CheckRecord rec;
  rec.id = "simulate";
  try {
    const auto traj = evolution::integrate(pb, t_end, ctrl);

    std::string anchor_kind = "zero";
    std::vector<double> anchor(pb.space.dim(), 0.0);
    std::vector<std::vector<double>> anchor_path;
    if (pb.reg.mode == evolution::RegularizationMode::Additive) {
      anchor_path = evolution::regularized_path(pb, traj.times).y;
      anchor_kind = "regularized-path";
    } else if (pb.op.mono_coef > 0.0) {
      anchor = evolution::stationary_solve(pb.space, pb.op, pb.forcing.limit);
      anchor_kind = "stationary";
    } else if (pb.op.kind == evolution::OperatorSpec::Kind::LinearPSD) {
      anchor = evolution::min_norm_solution(pb.space, pb.op, pb.forcing.limit);
      anchor_kind = "min-norm";
    }

    std::vector<double> dist(traj.times.size()), v(traj.times.size());
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const auto& ref = anchor_path.empty() ? anchor : anchor_path[i];
      std::vector<double> gap(pb.space.dim());
      for (int c = 0; c < pb.space.dim(); ++c) gap[c] = traj.x[i][c] - ref[c];
      dist[i] = pb.space.norm(gap);
      v[i] = pb.space.lyapunov(traj.phi[i], ref);
    }

    if (!cfg.output.empty()) {
      write_series_csv(cfg.output, {{"t", &traj.times},
                                    {"norm_x", &traj.norm_x},
                                    {"dist_anchor", &dist},
                                    {"v", &v}});
      nlohmann::ordered_json meta;
      meta["anchor_kind"] = anchor_kind;
      meta["anchor"] = anchor_path.empty() ? nlohmann::ordered_json(anchor)
                                           : nlohmann::ordered_json(nullptr);
      meta["v0"] = v.front();
      meta["v_final"] = v.back();
      meta["sup_norm"] = *std::max_element(traj.norm_x.begin(), traj.norm_x.end());
      meta["t_end"] = t_end;
      meta["samples"] = ctrl.samples;
      write_text(cfg.output + ".meta.json", meta.dump(2) + "\n");
    }
    rec.pass = true;
    rec.detail["anchor_kind"] = anchor_kind;
    rec.detail["v_final"] = v.back();
  } catch (const std::exception& err) {
    rec.pass = false;
    rec.error = err.what();
  }
  rep.records.push_back(std::move(rec));
}

// -------------------------------------------------------------- regularized

void cmd_regularized(const RunConfig& cfg, VerificationReport& rep) {
  const auto doc = read_json_file(cfg.input);
  auto pb = load_problem(doc);
  if (cfg.overrides.contains("alpha")) {
    pb.reg.mode = evolution::RegularizationMode::Additive;
    pb.reg.alpha = ScalarSpec::parse(cfg.overrides.at("alpha").get<std::string>());
  }
  if (pb.reg.alpha.is_zero())
    throw ConfigError("regularized command needs alpha in the problem or --alpha");

  std::vector<double> grid;
  if (cfg.overrides.contains("grid"))
    grid = parse_grid(cfg.overrides.at("grid").get<std::string>());
  else
    grid = default_grid(pb.t0, 1e3 * std::max(pb.t0, 1.0), 200);

  CheckRecord rec;
  rec.id = "regularized-path";
  try {
    const auto path = evolution::regularized_path(pb, grid);
    std::vector<double> limit;
    if (pb.op.kind == evolution::OperatorSpec::Kind::LinearPSD ||
        pb.op.kind == evolution::OperatorSpec::Kind::LinearSPD)
      limit = evolution::min_norm_solution(pb.space, pb.op, pb.forcing.limit);
    else
      limit = evolution::stationary_solve(pb.space, pb.op, pb.forcing.limit);

    std::vector<double> dist(path.y.size());
    for (size_t i = 0; i < path.y.size(); ++i) {
      std::vector<double> gap(pb.space.dim());
      for (int c = 0; c < pb.space.dim(); ++c) gap[c] = path.y[i][c] - limit[c];
      dist[i] = pb.space.norm(gap);
    }
    const double worst_res =
        *std::max_element(path.residuals.begin(), path.residuals.end());
    const double res_budget = 1e-9 * (pb.space.dual_norm(pb.forcing.limit) + 1.0);
    rec.pass = worst_res <= res_budget;
    rec.lhs = worst_res;
    rec.rhs = res_budget;
    rec.margin = res_budget - worst_res;
    rec.detail["dist_limit_final"] = dist.back();
    if (!cfg.output.empty())
      write_series_csv(cfg.output, {{"t", &path.times},
                                    {"norm_y", &path.norm_y},
                                    {"residual", &path.residuals},
                                    {"dist_limit", &dist}});
  } catch (const std::exception& err) {
    rec.pass = false;
    rec.error = err.what();
  }
  rep.records.push_back(std::move(rec));
}

// ------------------------------------------------------------------- check

void lemma_dominance_record(const RateSpecVariant& spec, double slack,
                            const std::string& id, VerificationReport& rep) {
  CheckRecord rec;
  rec.id = id;
  try {
    const auto curve = build_curve(spec);
    const auto grid = default_rate_grid(spec, 1000);
    const auto series = run_rate_oracle(spec, grid);
    const auto bound = rates::verify_dominance(grid, series.value, curve, slack);
    rec.pass = bound.pass;
    rec.lhs = bound.max_violation;
    rec.rhs = slack;
    rec.margin = slack - bound.max_violation;
    rec.detail["bound"] = bound.to_json();

    // Two-branch curves also cross-check the stored crossover against the
    // root finder on the neighbouring branch formulas.
    if (curve.crossovers().size() == 1) {
      const double t_bar = curve.crossovers().front();
      const auto& head = curve.branches().front();
      const auto& tail = curve.branches().back();
      const double numeric = rates::crossover_root(
          head.eval, tail.eval, curve.t0(), t_bar + 2.0 * (t_bar - curve.t0()) + 1.0);
      rec.detail["crossover_closed_form"] = t_bar;
      rec.detail["crossover_numeric"] = numeric;
      if (std::abs(numeric - t_bar) > 1e-9 * std::max(1.0, std::abs(t_bar)))
        rec.pass = false;
    }
  } catch (const std::exception& err) {
    rec.pass = false;
    rec.error = err.what();
  }
  rep.records.push_back(std::move(rec));
}

void cmd_check_lemma(const RunConfig& cfg, const nlohmann::json& doc, int lemma,
                     VerificationReport& rep) {
  const double slack = doc.value("slack", rates::kDominanceSlack);
  auto spec_of = [&](const nlohmann::json& d) {
    if (d.contains("spec_path"))
      return load_rate_spec(read_json_file(
          resolve_near(cfg.input, d.at("spec_path").get<std::string>())));
    return load_rate_spec(d.at("spec"));
  };

  if (lemma == 1) {
    const auto spec = spec_of(doc);
    const auto* p = std::get_if<rates::PowerRateSpec>(&spec);
    if (p == nullptr)
      throw ConfigError("vanishing-limit check expects a power-family spec");
    CheckRecord rec;
    rec.id = "lemma1-vanishing-limit";
    try {
      const auto g = p->general();
      const auto grid = log_grid(p->t0, 1e4 * p->t0, 2000);
      const auto series = rates::oracle_ode(g.alpha, g.gamma, g.psi, g.lambda0, grid);
      rec.lhs = series.back();
      rec.rhs = 1e-3 * p->lambda0;
      rec.margin = rec.rhs - rec.lhs;
      rec.pass = rec.lhs <= rec.rhs;
    } catch (const std::exception& err) {
      rec.pass = false;
      rec.error = err.what();
    }
    rep.records.push_back(std::move(rec));
    return;
  }

  if (lemma == 2 || lemma == 3) {
    const auto spec = spec_of(doc);
    const auto* p = std::get_if<rates::PowerRateSpec>(&spec);
    if (p == nullptr)
      throw ConfigError("general-bound check expects a power-family spec");
    CheckRecord rec;
    rec.id = "lemma" + std::to_string(lemma) + "-general-bound";
    try {
      const auto curve = rates::general_majorant(p->general());
      const auto grid = log_grid(p->t0, 100.0 * p->t0, 1000);
      const auto g = p->general();
      const auto series = rates::oracle_ode(g.alpha, g.gamma, g.psi, g.lambda0, grid);
      const auto bound = rates::verify_dominance(grid, series, curve, slack);
      rec.pass = bound.pass;
      rec.lhs = bound.max_violation;
      rec.rhs = slack;
      rec.margin = slack - bound.max_violation;
      rec.detail["branches"] = curve.branches().size();
    } catch (const std::exception& err) {
      rec.pass = false;
      rec.error = err.what();
    }
    rep.records.push_back(std::move(rec));
    return;
  }

  if (lemma >= 4 && lemma <= 10) {
    const int draws = doc.value("draws", 0);
    if (draws > 0) {
      Rng rng(cfg.seed);
      for (int i = 0; i < draws; ++i) {
        RateSpecVariant spec =
            lemma == 10 ? RateSpecVariant(rates::draw_exp_spec(rng))
                        : RateSpecVariant(rates::draw_power_spec(lemma, rng));
        lemma_dominance_record(
            spec, slack,
            "lemma" + std::to_string(lemma) + "-draw" + std::to_string(i), rep);
      }
    } else {
      lemma_dominance_record(spec_of(doc), slack,
                             "lemma" + std::to_string(lemma) + "-dominance", rep);
    }
    return;
  }

  if (lemma == 11) {
    const auto pb = load_problem(read_json_file(
        resolve_near(cfg.input, doc.at("problem").get<std::string>())));
    const double window = doc.value("window", 4.0);
    std::vector<int> sizes = {400, 800, 1600};
    if (doc.contains("grid_sizes"))
      sizes = doc.at("grid_sizes").get<std::vector<int>>();
    CheckRecord rec;
    rec.id = "lemma11-chain-rule";
    try {
      std::vector<double> discrepancy;
      for (int n : sizes) {
        evolution::StepControl ctrl;
        ctrl.samples = n;
        ctrl.grid = GridKind::Linear;
        ctrl.rel_tol = 1e-10;
        const auto traj = evolution::integrate(pb, pb.t0 + window, ctrl);
        std::vector<double> anchor(pb.space.dim(), 0.0);
        if (pb.op.mono_coef > 0.0)
          anchor = evolution::stationary_solve(pb.space, pb.op, pb.forcing.limit);
        std::vector<std::vector<double>> path(traj.times.size(), anchor);
        discrepancy.push_back(
            evolution::chain_rule_check(pb, traj, path).max_discrepancy);
      }
      bool pass = true;
      nlohmann::ordered_json orders = nlohmann::ordered_json::array();
      for (size_t i = 0; i + 1 < discrepancy.size(); ++i) {
        const double order = std::log2(discrepancy[i] / discrepancy[i + 1]);
        orders.push_back(order);
        if (!(order >= 1.8)) pass = false;
      }
      rec.pass = pass;
      rec.detail["discrepancies"] = discrepancy;
      rec.detail["orders"] = orders;
    } catch (const std::exception& err) {
      rec.pass = false;
      rec.error = err.what();
    }
    rep.records.push_back(std::move(rec));
    return;
  }
  throw ConfigError("lemma id must lie in 1..11");
}

void cmd_check(const RunConfig& cfg, VerificationReport& rep) {
  nlohmann::json doc;
  if (!cfg.input.empty())
    doc = read_json_file(cfg.input);
  else
    doc = cfg.overrides;

  if (doc.contains("lemma")) {
    cmd_check_lemma(cfg, doc, doc.at("lemma").get<int>(), rep);
    return;
  }
  if (!doc.contains("theorem"))
    throw ConfigError("check document needs a 'theorem' or 'lemma' id");

  const int theorem = doc.at("theorem").get<int>();
  const auto pb = load_problem(read_json_file(
      resolve_near(cfg.input, doc.at("problem").get<std::string>())));
  evolution::CheckParams params;
  params.horizon = doc.value("horizon", 0.0);
  params.threshold = doc.value("threshold", 1e-3);
  params.c0 = doc.value("c0", 2.0);
  params.samples = doc.value("samples", 600);

  CheckRecord rec;
  rec.id = "theorem" + std::to_string(theorem);
  rec.anchor = rec.id;
  try {
    evolution::TheoremReport tr;
    if (doc.contains("traj")) {
      const auto csv = read_trajectory_csv(
          resolve_near(cfg.input, doc.at("traj").get<std::string>()));
      evolution::StepControl ctrl;
      ctrl.explicit_times = csv.t;
      const auto traj = evolution::integrate(pb, csv.t.back(), ctrl);
      tr = evolution::check_theorem(pb, traj, theorem, params);
    } else {
      tr = evolution::check_theorem(pb, theorem, params);
    }
    rec.pass = tr.pass;
    if (tr.inconclusive) rec.error = "hypothesis violation: run inconclusive";
    rec.detail = tr.to_json();
  } catch (const std::exception& err) {
    rec.pass = false;
    rec.error = err.what();
  }
  rep.records.push_back(std::move(rec));
}

}  // namespace

nlohmann::ordered_json CheckRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["anchor"] = anchor;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["pass"] = pass;
  if (!error.empty()) j["error"] = error;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

bool VerificationReport::overall_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.pass; });
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config_echo;
  j["seed"] = seed;
  j["pass"] = overall_pass();
  std::size_t passed = 0;
  for (const auto& r : records) passed += r.pass ? 1 : 0;
  j["summary"] = {{"total", records.size()}, {"passed", passed}};
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) j["records"].push_back(CheckRecordJson(r));
  return j;
}

RunResult run(const RunConfig& cfg) {
  VerificationReport rep;
  rep.config_echo = cfg.to_json();
  rep.seed = cfg.seed;

  RunResult result;
  try {
    if (cfg.command == "majorant")
      cmd_majorant(cfg, rep);
    else if (cfg.command == "oracle")
      cmd_oracle(cfg, rep);
    else if (cfg.command == "verify-geometry")
      cmd_verify_geometry(cfg, rep);
    else if (cfg.command == "simulate")
      cmd_simulate(cfg, rep);
    else if (cfg.command == "regularized")
      cmd_regularized(cfg, rep);
    else if (cfg.command == "check")
      cmd_check(cfg, rep);
    else
      throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const ConfigError& err) {
    result.status = 1;
    result.report = rep.to_json();
    result.report["error"] = err.what();
    return result;
  } catch (const nlohmann::json::exception& err) {
    result.status = 1;
    result.report = rep.to_json();
    result.report["error"] = err.what();
    return result;
  }

  result.report = rep.to_json();
  result.status = rep.overall_pass() ? 0 : 2;
  return result;
}

}  // namespace banachflow::harness
