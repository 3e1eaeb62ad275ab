#include "banachflow/harness/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "banachflow/errors.hpp"

namespace banachflow::harness {

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

std::vector<double> as_vector(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& c : j) v.push_back(c.get<double>());
  return v;
}

ScalarSpec scalar_from(const nlohmann::json& j, const char* what) {
  if (j.is_null()) return ScalarSpec::zero();
  if (j.is_string()) return ScalarSpec::parse(j.get<std::string>());
  if (j.is_number()) return ScalarSpec::constant(j.get<double>());
  throw ConfigError(std::string(what) + " must be a descriptor string");
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j,
                               const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig cfg;
  cfg.command = j.value("command", "");
  if (cfg.command.empty()) throw ConfigError("run config is missing 'command'");
  cfg.input = resolve(base_dir, j.value("input", ""));
  cfg.output = resolve(base_dir, j.value("output", ""));
  cfg.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("covers"))
    for (const auto& c : j.at("covers")) cfg.covers.push_back(c.get<std::string>());
  if (j.contains("overrides")) cfg.overrides = j.at("overrides");
  return cfg;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["input"] = input;
  j["output"] = output;
  j["seed"] = seed;
  j["covers"] = covers;
  j["overrides"] = overrides;
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& err) {
    throw ConfigError("JSON parse failure in '" + path + "': " + err.what());
  }
  return j;
}

RateSpecVariant load_rate_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("rate spec must be a JSON object");
  const std::string family = j.value("family", "power");
  try {
    if (family == "power") {
      rates::PowerRateSpec s;
      s.b = j.at("b").get<double>();
      s.m = j.value("m", 1.0);
      s.d = j.value("d", 0.0);
      s.n = j.at("n").get<double>();
      s.nu = j.value("nu", 1.0);
      s.c0 = j.value("c0", 2.0);
      s.t0 = j.value("t0", 1.0);
      s.lambda0 = j.value("lambda0", 0.0);
      s.validate();
      return s;
    }
    if (family == "exp") {
      rates::ExpRateSpec s;
      s.b = j.at("b").get<double>();
      s.d = j.value("d", 0.0);
      s.n = j.value("n", 1.0);
      s.c0 = j.value("c0", 2.0);
      s.t0 = j.value("t0", 0.0);
      s.lambda0 = j.value("lambda0", 0.0);
      s.validate();
      return s;
    }
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("rate spec field error: ") + err.what());
  }
  throw ConfigError("unknown rate spec family '" + family + "'");
}

nlohmann::ordered_json rate_spec_json(const RateSpecVariant& spec) {
  nlohmann::ordered_json j;
  if (const auto* p = std::get_if<rates::PowerRateSpec>(&spec)) {
    j["family"] = "power";
    j["b"] = p->b;
    j["m"] = p->m;
    j["d"] = p->d;
    j["n"] = p->n;
    j["nu"] = p->nu;
    j["c0"] = p->c0;
    j["t0"] = p->t0;
    j["lambda0"] = p->lambda0;
  } else {
    const auto& e = std::get<rates::ExpRateSpec>(spec);
    j["family"] = "exp";
    j["b"] = e.b;
    j["d"] = e.d;
    j["n"] = e.n;
    j["c0"] = e.c0;
    j["t0"] = e.t0;
    j["lambda0"] = e.lambda0;
  }
  return j;
}

evolution::EvolutionProblem load_problem(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("problem must be a JSON object");
  try {
    const auto& js = j.at("space");
    geometry::LpSpace space(js.at("p").get<double>(), js.at("dim").get<int>());
    const int dim = space.dim();

    const auto& jo = j.at("operator");
    evolution::OperatorSpec op;
    const std::string kind = jo.at("kind").get<std::string>();
    op.dim = dim;
    if (kind == "diagonal-power") {
      op.kind = evolution::OperatorSpec::Kind::DiagonalPower;
      op.coef = jo.value("coef", 1.0);
      op.power = jo.value("power", 1.0);
    } else if (kind == "linear-spd" || kind == "linear-psd") {
      op.kind = kind == "linear-spd"
                    ? evolution::OperatorSpec::Kind::LinearSPD
                    : evolution::OperatorSpec::Kind::LinearPSD;
      const auto& rows = jo.at("matrix");
      if (static_cast<int>(rows.size()) != dim)
        throw ConfigError("operator matrix row count mismatch");
      op.matrix.reserve(static_cast<size_t>(dim) * dim);
      for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim)
          throw ConfigError("operator matrix column count mismatch");
        for (const auto& c : row) op.matrix.push_back(c.get<double>());
      }
    } else {
      throw ConfigError("unknown operator kind '" + kind + "'");
    }
    if (jo.contains("drift") && !jo.at("drift").is_null()) {
      const auto& jd = jo.at("drift");
      evolution::Drift drift;
      drift.omega1 = scalar_from(jd.at("omega1"), "drift omega1");
      if (jd.contains("g")) drift.g = scalar_from(jd.at("g"), "drift g");
      drift.direction = as_vector(jd.at("direction"), "drift direction");
      // Normalize so the envelope equals the perturbation norm exactly.
      const double nrm = space.dual_norm(drift.direction);
      if (nrm > 0.0)
        for (double& c : drift.direction) c /= nrm;
      op.drift = std::move(drift);
    }
    op.validate();

    evolution::Forcing forcing;
    if (j.contains("forcing")) {
      const auto& jf = j.at("forcing");
      forcing.limit = as_vector(jf.at("limit"), "forcing limit");
      if (jf.contains("omega2")) {
        forcing.omega2 = scalar_from(jf.at("omega2"), "forcing omega2");
        if (!forcing.omega2.is_zero()) {
          forcing.direction = as_vector(jf.at("direction"), "forcing direction");
          const double nrm = space.dual_norm(forcing.direction);
          if (nrm > 0.0)
            for (double& c : forcing.direction) c /= nrm;
        }
      }
    } else {
      forcing.limit.assign(dim, 0.0);
    }

    evolution::Regularization reg;
    if (j.contains("regularization") && !j.at("regularization").is_null()) {
      const auto& jr = j.at("regularization");
      const std::string mode = jr.value("mode", "none");
      if (mode == "none")
        reg.mode = evolution::RegularizationMode::None;
      else if (mode == "factor")
        reg.mode = evolution::RegularizationMode::Factor;
      else if (mode == "additive")
        reg.mode = evolution::RegularizationMode::Additive;
      else if (mode == "constant")
        reg.mode = evolution::RegularizationMode::Constant;
      else
        throw ConfigError("unknown regularization mode '" + mode + "'");
      if (reg.mode != evolution::RegularizationMode::None)
        reg.alpha = scalar_from(jr.at("alpha"), "alpha");
    }

    evolution::EvolutionProblem pb{std::move(space), std::move(op),
                                   std::move(forcing), reg,
                                   as_vector(j.at("x0"), "x0"),
                                   j.value("t0", 1.0)};
    pb.validate();
    return pb;
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("problem field error: ") + err.what());
  }
}

void write_series_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, const std::vector<double>*>>&
        columns) {
  if (columns.empty()) throw ConfigError("CSV needs at least one column");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  for (size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].first;
  out << "\n";
  const size_t rows = columns.front().second->size();
  char buf[40];
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", (*columns[c].second)[r]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

TrajectoryCsv read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV '" + path + "'");
  TrajectoryCsv csv;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 4)
      throw ConfigError("trajectory CSV needs columns t,norm_x,dist_anchor,v");
    csv.t.push_back(vals[0]);
    csv.norm_x.push_back(vals[1]);
    csv.dist_anchor.push_back(vals[2]);
    csv.v.push_back(vals[3]);
  }
  if (csv.t.empty()) throw ConfigError("trajectory CSV has no rows");
  return csv;
}

}  // namespace banachflow::harness
