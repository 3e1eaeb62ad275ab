#include "banachflow/rates/root.hpp"

#include <algorithm>
#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::rates {

namespace {

int sign(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

bool residual_ok(double fv, double gv) {
  const double scale = std::max({std::abs(fv), std::abs(gv), 1.0});
  return std::abs(fv - gv) <= 1e-10 * scale;
}

}  // namespace

double crossover_root(const ScalarFn& f, const ScalarFn& g, double t_lo,
                      double t_hi) {
  if (!(t_hi > t_lo)) throw BracketError("crossover bracket is empty");

  constexpr int kProbes = 256;
  double lo = t_lo, hi = t_hi;
  int changes = 0;
  {
    double prev_t = t_lo;
    int prev_s = sign(f(t_lo) - g(t_lo));
    for (int i = 1; i < kProbes; ++i) {
      const double t = t_lo + (t_hi - t_lo) * i / (kProbes - 1);
      const int s = sign(f(t) - g(t));
      if (s != 0 && prev_s != 0 && s != prev_s) {
        ++changes;
        lo = prev_t;
        hi = t;
      }
      if (s != 0) {
        prev_s = s;
        prev_t = t;
      }
    }
  }
  if (changes == 0)
    throw NoSignChangeError("f - g does not change sign on the bracket");
  if (changes > 1)
    throw MultipleSignChangeError(
        "f - g changes sign more than once on the bracket");

  double h_lo = f(lo) - g(lo);
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    // Secant proposal, falling back to the midpoint when it leaves the
    // bracket or stalls.
    const double h_hi = f(hi) - g(hi);
    double cand = hi - h_hi * (hi - lo) / (h_hi - h_lo);
    if (!std::isfinite(cand) || cand <= lo || cand >= hi)
      cand = 0.5 * (lo + hi);
    mid = cand;
    const double fv = f(mid), gv = g(mid);
    if (residual_ok(fv, gv)) return mid;
    const double h_mid = fv - gv;
    if (sign(h_mid) == sign(h_lo)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::abs(mid) * 1e-15 + 1e-300) break;
  }
  if (residual_ok(f(mid), g(mid))) return mid;
  throw std::runtime_error("crossover refinement failed to meet tolerance");
}

int count_sign_changes(const ScalarFn& u, const ScalarFn& v,
                       std::span<const double> grid) {
  if (grid.size() < 64)
    throw GridError("sign-change scan needs a grid of at least 64 points");
  int changes = 0;
  int prev = 0;
  for (double t : grid) {
    const int s = sign(u(t) - v(t));
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

}  // namespace banachflow::rates
