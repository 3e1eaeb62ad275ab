#pragma once

#include <string>
#include <vector>

namespace banachflow {

enum class GridKind { Log, Linear };

/// n points spanning [t0, t1], log-spaced. Requires t0 > 0.
std::vector<double> log_grid(double t0, double t1, int n);

std::vector<double> linear_grid(double t0, double t1, int n);

/// Default grid: geometric when t0 > 0, linear otherwise.
std::vector<double> default_grid(double t0, double t1, int n);

std::vector<double> make_grid(GridKind kind, double t0, double t1, int n);

/// Parses "log:1:100:1000" / "lin:0:50:500" grid descriptors.
std::vector<double> parse_grid(const std::string& text);

}  // namespace banachflow
