#include "banachflow/geometry/moduli.hpp"

#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::geometry {

double convexity_estimate_extended(double p, double eps) {
  if (p <= 2.0) return (p - 1.0) * eps * eps / 8.0;
  return std::pow(eps, p) / (p * std::pow(2.0, p));
}

double smoothness_estimate_extended(double p, double tau) {
  if (p <= 2.0) return std::pow(tau, p) / p;
  return (p - 1.0) * tau * tau / 2.0;
}

double modulus_convexity(const LpSpace& space, double eps) {
  if (eps < 0.0 || eps > 2.0)
    throw DomainError("modulus of convexity is defined on [0, 2]");
  return convexity_estimate_extended(space.p(), eps);
}

double modulus_smoothness(const LpSpace& space, double tau) {
  if (tau < 0.0) throw DomainError("modulus of smoothness needs tau >= 0");
  return smoothness_estimate_extended(space.p(), tau);
}

double mu_envelope(const LpSpace& space, const GeometryConstants& k,
                   double xi) {
  return 8.0 * xi * xi + k.c1() * smoothness_estimate_extended(space.p(), xi);
}

double g_ratio(const LpSpace& space, double eps) {
  if (eps == 0.0) return 0.0;
  return convexity_estimate_extended(space.p(), eps) / eps;
}

double invert_increasing(const std::function<double(double)>& f, double target,
                         double lo, double hi) {
  if (!(hi > lo)) throw BracketError("inversion bracket is empty");
  double flo = f(lo), fhi = f(hi);
  if (target < flo || target > fhi)
    throw BracketError("inversion target outside [f(lo), f(hi)]");
  const double tol = 1e-10 * std::max(std::abs(target), 1.0);
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm - target) <= tol) return mid;
    if (fm < target)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

namespace {

double grown_inverse(const std::function<double(double)>& f, double target) {
  if (target <= 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (f(hi) < target) {
    hi *= 2.0;
    if (++guard > 2000) throw BracketError("inverse bracket growth failed");
  }
  return invert_increasing(f, target, 0.0, hi);
}

}  // namespace

double inverse_convexity(const LpSpace& space, double target) {
  const double p = space.p();
  return grown_inverse(
      [p](double e) { return convexity_estimate_extended(p, e); }, target);
}

double inverse_mu(const LpSpace& space, const GeometryConstants& k,
                  double target) {
  return grown_inverse([&](double xi) { return mu_envelope(space, k, xi); },
                       target);
}

double inverse_g(const LpSpace& space, double target) {
  return grown_inverse([&](double e) { return g_ratio(space, e); }, target);
}

}  // namespace banachflow::geometry
