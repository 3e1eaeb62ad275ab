#include "banachflow/geometry/reports.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "banachflow/errors.hpp"
#include "banachflow/rng.hpp"

namespace banachflow::geometry {

namespace {

constexpr double kRoundoff = 1e-12;

InequalityRecord record(std::string id, std::string anchor, double lhs,
                        double rhs) {
  InequalityRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  r.pass = lhs <= rhs + kRoundoff * scale;
  return r;
}

void require_radius(const LpSpace& space, const GeometryConstants& k,
                    std::span<const double> x, std::span<const double> y) {
  const double tol = 1.0 + 1e-12;
  if (space.norm(x) > k.R * tol || space.norm(y) > k.R * tol)
    throw HypothesisError("vector norm exceeds the constants' radius R");
}

std::vector<double> diff(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

std::vector<double> sum(std::span<const double> a, std::span<const double> b) {
  std::vector<double> s(a.size());
  for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

}  // namespace

nlohmann::ordered_json InequalityRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["anchor"] = anchor;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["pass"] = pass;
  return j;
}

bool GeometryReport::all_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const InequalityRecord& r) { return r.pass; });
}

nlohmann::ordered_json GeometryReport::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : records) j.push_back(r.to_json());
  return j;
}

GeometryReport lyapunov_sandwich(const LpSpace& space,
                                 const GeometryConstants& k,
                                 std::span<const double> x,
                                 std::span<const double> y) {
  require_radius(space, k, x, y);
  const auto phi = space.duality_map(x);
  const double V = space.lyapunov(phi, y);
  const double nx = space.norm(x);
  const double ny = space.norm(y);
  const double gap = space.norm(diff(x, y));
  const double c2 = k.c2();

  GeometryReport rep;
  rep.records.push_back(record("v-lower-norm-gap", "2.8",
                               0.5 * (nx - ny) * (nx - ny), V));
  rep.records.push_back(record("v-upper-norm-sum", "2.9", V,
                               0.5 * (nx + ny) * (nx + ny)));
  rep.records.push_back(record(
      "v-lower-convexity", "2.17",
      convexity_estimate_extended(space.p(), gap / (2.0 * c2)) / k.L, V));
  rep.records.push_back(
      record("v-upper-envelope", "2.18", V, mu_envelope(space, k, gap)));
  rep.records.push_back(record(
      "gap-recovery-upper", "2.19", gap,
      2.0 * c2 * inverse_convexity(space, k.L * std::max(V, 0.0))));
  rep.records.push_back(record("gap-recovery-lower", "2.20",
                               inverse_mu(space, k, std::max(V, 0.0)), gap));
  return rep;
}

GeometryReport duality_inequalities(const LpSpace& space,
                                    const GeometryConstants& k,
                                    std::span<const double> x,
                                    std::span<const double> y) {
  require_radius(space, k, x, y);
  const LpSpace dual = space.dual();
  const auto ux = space.duality_map(x);
  const auto uy = space.duality_map(y);
  const auto du = diff(ux, uy);
  const auto dx = diff(x, y);
  const double pairing = space.pairing(du, dx);
  const double gap = space.norm(dx);
  const double dual_gap = space.dual_norm(du);
  const double c1 = k.c1();
  const double c2 = k.c2();
  const double p = space.p();
  const double q = space.q();

  GeometryReport rep;
  rep.records.push_back(
      record("pairing-upper-primal", "2.10", pairing,
             8.0 * gap * gap + c1 * smoothness_estimate_extended(p, gap)));
  rep.records.push_back(record(
      "pairing-upper-dual", "2.11", pairing,
      8.0 * dual_gap * dual_gap +
          c1 * smoothness_estimate_extended(q, dual_gap)));
  rep.records.push_back(
      record("pairing-lower-primal", "2.12",
             convexity_estimate_extended(p, gap / c2) / (2.0 * k.L), pairing));
  rep.records.push_back(record(
      "pairing-lower-dual", "2.13",
      convexity_estimate_extended(q, dual_gap / c2) / (2.0 * k.L), pairing));
  rep.records.push_back(record("gap-to-dual-gap", "2.14", dual_gap,
                               c2 * inverse_g(dual, 2.0 * c2 * k.L * gap)));
  rep.records.push_back(record("dual-gap-to-gap", "2.15", gap,
                               c2 * inverse_g(space, 2.0 * c2 * k.L * dual_gap)));
  rep.records.push_back(record("monotonicity", "2.12", 0.0, pairing));
  rep.records.push_back(
      record("v-pairing-upper", "2.16", space.lyapunov(ux, y), pairing));

  const double nx = space.norm(x);
  const double ny = space.norm(y);
  const double lhs_par =
      2.0 * nx * nx + 2.0 * ny * ny - std::pow(space.norm(sum(x, y)), 2.0);
  rep.records.push_back(
      record("parallelogram-upper", "after-2.15", lhs_par,
             4.0 * gap * gap + c1 * smoothness_estimate_extended(p, gap)));
  rep.records.push_back(
      record("parallelogram-lower", "after-2.15",
             convexity_estimate_extended(p, gap / c2) / (4.0 * k.L), lhs_par));
  return rep;
}

bool GeometryFuzzReport::all_pass() const {
  return std::all_of(summaries.begin(), summaries.end(),
                     [](const FuzzSummary& s) { return s.pass; });
}

nlohmann::ordered_json GeometryFuzzReport::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = p;
  j["dim"] = dim;
  j["L"] = L;
  j["R"] = R;
  j["pairs"] = pairs;
  j["seed"] = seed;
  j["pass"] = all_pass();
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json js;
    js["id"] = s.id;
    js["anchor"] = s.anchor;
    js["worst_margin"] = s.worst_margin;
    js["worst_lhs"] = s.worst_lhs;
    js["worst_rhs"] = s.worst_rhs;
    js["violations"] = s.violations;
    js["pass"] = s.pass;
    j["records"].push_back(js);
  }
  return j;
}

GeometryFuzzReport run_geometry_fuzz(const LpSpace& space,
                                     const GeometryConstants& k,
                                     std::uint64_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  const int d = space.dim();

  auto random_point = [&]() {
    std::vector<double> v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    const double nrm = space.norm(v);
    const double target = k.R * rng.uniform01();
    if (nrm > 0.0)
      for (double& c : v) c *= target / nrm;
    return v;
  };

  std::map<std::string, FuzzSummary> acc;
  std::map<std::string, std::string> anchors;
  auto absorb = [&](const GeometryReport& rep) {
    for (const auto& r : rep.records) {
      auto [it, fresh] = acc.try_emplace(r.id);
      FuzzSummary& s = it->second;
      if (fresh) {
        s.id = r.id;
        s.anchor = r.anchor;
        s.worst_margin = r.margin;
        s.worst_lhs = r.lhs;
        s.worst_rhs = r.rhs;
        s.pass = true;
      } else if (r.margin < s.worst_margin) {
        s.worst_margin = r.margin;
        s.worst_lhs = r.lhs;
        s.worst_rhs = r.rhs;
      }
      if (!r.pass) {
        ++s.violations;
        s.pass = false;
      }
    }
  };

  // Corner pairs first: coincident vectors, the origin, antipodes at full
  // radius, then the random bulk.
  std::vector<std::pair<std::vector<double>, std::vector<double>>> corner;
  {
    std::vector<double> e0(d, 0.0), zero(d, 0.0);
    e0[0] = k.R;
    std::vector<double> me0(d, 0.0);
    me0[0] = -k.R;
    corner.push_back({e0, e0});
    corner.push_back({e0, zero});
    corner.push_back({e0, me0});
  }
  for (const auto& [x, y] : corner) {
    absorb(lyapunov_sandwich(space, k, x, y));
    absorb(duality_inequalities(space, k, x, y));
  }
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const auto x = random_point();
    const auto y = random_point();
    absorb(lyapunov_sandwich(space, k, x, y));
    absorb(duality_inequalities(space, k, x, y));
  }

  GeometryFuzzReport rep;
  rep.p = space.p();
  rep.dim = d;
  rep.L = k.L;
  rep.R = k.R;
  rep.pairs = pairs;
  rep.seed = seed;
  for (auto& [id, s] : acc) rep.summaries.push_back(std::move(s));
  return rep;
}

}  // namespace banachflow::geometry
