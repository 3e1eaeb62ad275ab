#include "banachflow/grid.hpp"

#include <cmath>
#include <sstream>

#include "banachflow/errors.hpp"

namespace banachflow {

std::vector<double> log_grid(double t0, double t1, int n) {
  if (t0 <= 0.0 || t1 <= t0) throw GridError("log grid needs 0 < t0 < t1");
  if (n < 2) throw GridError("grid needs at least 2 points");
  std::vector<double> g(n);
  const double l0 = std::log(t0), l1 = std::log(t1);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  g.front() = t0;
  g.back() = t1;
  return g;
}

std::vector<double> linear_grid(double t0, double t1, int n) {
  if (t1 <= t0) throw GridError("linear grid needs t0 < t1");
  if (n < 2) throw GridError("grid needs at least 2 points");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t0 + (t1 - t0) * i / (n - 1);
  g.back() = t1;
  return g;
}

std::vector<double> default_grid(double t0, double t1, int n) {
  return t0 > 0.0 ? log_grid(t0, t1, n) : linear_grid(t0, t1, n);
}

std::vector<double> make_grid(GridKind kind, double t0, double t1, int n) {
  return kind == GridKind::Log ? log_grid(t0, t1, n) : linear_grid(t0, t1, n);
}

std::vector<double> parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string kind, a, b, c;
  if (!std::getline(in, kind, ':') || !std::getline(in, a, ':') ||
      !std::getline(in, b, ':') || !std::getline(in, c, ':'))
    throw ConfigError("grid descriptor must be kind:t0:t1:n, got '" + text + "'");
  double t0 = 0, t1 = 0;
  int n = 0;
  try {
    t0 = std::stod(a);
    t1 = std::stod(b);
    n = std::stoi(c);
  } catch (const std::exception&) {
    throw ConfigError("unparsable grid descriptor '" + text + "'");
  }
  if (kind == "log") return log_grid(t0, t1, n);
  if (kind == "lin") return linear_grid(t0, t1, n);
  throw ConfigError("unknown grid kind '" + kind + "'");
}

}  // namespace banachflow
