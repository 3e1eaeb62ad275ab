#include "banachflow/geometry/lp_space.hpp"

#include <cmath>

#include "banachflow/errors.hpp"

namespace banachflow::geometry {

namespace {

double p_norm(std::span<const double> v, double p) {
  // Scaled accumulation keeps |x_i|^p away from overflow/underflow.
  double amax = 0.0;
  for (double c : v) amax = std::max(amax, std::abs(c));
  if (amax == 0.0) return 0.0;
  double acc = 0.0;
  for (double c : v) acc += std::pow(std::abs(c) / amax, p);
  return amax * std::pow(acc, 1.0 / p);
}

std::vector<double> raw_duality(std::span<const double> v, double p) {
  const double nrm = p_norm(v, p);
  std::vector<double> out(v.size(), 0.0);
  if (nrm == 0.0) return out;
  const double scale = std::pow(nrm, 2.0 - p);
  for (size_t i = 0; i < v.size(); ++i) {
    const double c = v[i];
    if (c != 0.0)
      out[i] = scale * std::pow(std::abs(c), p - 1.0) * (c > 0.0 ? 1.0 : -1.0);
  }
  return out;
}

}  // namespace

LpSpace::LpSpace(double p, int dim) : p_(p), dim_(dim) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ParameterError("exponent p must lie in (1, infinity)");
  if (dim < 1) throw ParameterError("dimension must be at least 1");
}

void LpSpace::check_dim(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw DimensionError("vector length does not match space dimension");
}

double LpSpace::norm(std::span<const double> x) const {
  check_dim(x);
  return p_norm(x, p_);
}

double LpSpace::dual_norm(std::span<const double> phi) const {
  check_dim(phi);
  return p_norm(phi, q());
}

double LpSpace::pairing(std::span<const double> phi,
                        std::span<const double> x) const {
  check_dim(phi);
  check_dim(x);
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i) acc += phi[i] * x[i];
  return acc;
}

std::vector<double> LpSpace::duality_map(std::span<const double> x) const {
  check_dim(x);
  return raw_duality(x, p_);
}

std::vector<double> LpSpace::inverse_duality_map(
    std::span<const double> phi) const {
  check_dim(phi);
  return raw_duality(phi, q());
}

double LpSpace::lyapunov(std::span<const double> phi,
                         std::span<const double> y) const {
  check_dim(phi);
  check_dim(y);
  const double np = p_norm(phi, q());
  const double ny = p_norm(y, p_);
  return 0.5 * (np * np - 2.0 * pairing(phi, y) + ny * ny);
}

std::vector<double> LpSpace::duality_jacobian(std::span<const double> x,
                                              double floor) const {
  check_dim(x);
  const int d = dim_;
  std::vector<double> jac(static_cast<size_t>(d) * d, 0.0);
  const double nrm = p_norm(x, p_);
  if (nrm == 0.0) {
    // Model the map near 0 by the identity; only used to seed Newton.
    for (int i = 0; i < d; ++i) jac[static_cast<size_t>(i) * d + i] = 1.0;
    return jac;
  }
  const double clamp = floor * (nrm + 1e-30);
  std::vector<double> s(d);
  for (int i = 0; i < d; ++i) {
    const double c = std::max(std::abs(x[i]), clamp);
    s[i] = std::pow(c, p_ - 1.0) * (x[i] >= 0.0 ? 1.0 : -1.0);
  }
  const double diag_scale = std::pow(nrm, 2.0 - p_) * (p_ - 1.0);
  const double rank1_scale = (2.0 - p_) * std::pow(nrm, 2.0 - 2.0 * p_);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      jac[static_cast<size_t>(i) * d + j] = rank1_scale * s[i] * s[j];
    const double c = std::max(std::abs(x[i]), clamp);
    jac[static_cast<size_t>(i) * d + i] += diag_scale * std::pow(c, p_ - 2.0);
  }
  return jac;
}

DualPair DualPair::of(const LpSpace& space, std::vector<double> x) {
  DualPair pair;
  pair.phi = space.duality_map(x);
  pair.x = std::move(x);
  return pair;
}

}  // namespace banachflow::geometry
