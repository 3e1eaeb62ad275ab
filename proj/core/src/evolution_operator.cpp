#include "banachflow/evolution/operator.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "banachflow/errors.hpp"

namespace banachflow::evolution {

namespace {

Eigen::Map<const Eigen::MatrixXd> as_matrix(const std::vector<double>& m,
                                            int dim) {
  return Eigen::Map<const Eigen::MatrixXd>(m.data(), dim, dim);
}

}  // namespace

void OperatorSpec::validate() {
  if (dim < 1) throw ParameterError("operator dimension must be positive");
  switch (kind) {
    case Kind::DiagonalPower: {
      if (!(coef > 0.0)) throw ParameterError("diagonal-power needs coef > 0");
      if (!(power >= 1.0)) throw ParameterError("diagonal-power needs power >= 1");
      mono_coef = coef;  // space factor applied separately
      mono_expo = power + 1.0;
      break;
    }
    case Kind::LinearSPD:
    case Kind::LinearPSD: {
      if (static_cast<int>(matrix.size()) != dim * dim)
        throw ParameterError("matrix size does not match dimension");
      const auto M = as_matrix(matrix, dim);
      if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + M.norm()))
        throw ParameterError("linear operator matrix must be symmetric");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
      const double lo = eig.eigenvalues().minCoeff();
      if (kind == Kind::LinearSPD) {
        if (!(lo > 0.0))
          throw ParameterError("SPD operator needs strictly positive spectrum");
        mono_coef = lo;
      } else {
        if (lo < -1e-10 * (1.0 + M.norm()))
          throw ParameterError("PSD operator has a negative eigenvalue");
        mono_coef = 0.0;
      }
      mono_expo = 2.0;
      break;
    }
    case Kind::Custom: {
      if (!custom_apply) throw ParameterError("custom operator has no apply");
      break;
    }
  }
  if (drift) {
    if (static_cast<int>(drift->direction.size()) != dim)
      throw DimensionError("drift direction length mismatch");
  }
}

std::vector<double> OperatorSpec::apply_limit(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim)
    throw DimensionError("operator applied to wrong-size vector");
  switch (kind) {
    case Kind::DiagonalPower: {
      std::vector<double> out(dim);
      for (int i = 0; i < dim; ++i)
        out[i] = x[i] == 0.0
                     ? 0.0
                     : coef * std::pow(std::abs(x[i]), power - 1.0) * x[i];
      return out;
    }
    case Kind::LinearSPD:
    case Kind::LinearPSD: {
      std::vector<double> out(dim, 0.0);
      for (int i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += matrix[i * dim + j] * x[j];
        out[i] = acc;
      }
      return out;
    }
    case Kind::Custom:
      return custom_apply(x);
  }
  return {};
}

std::vector<double> OperatorSpec::apply(double t,
                                        const geometry::LpSpace& space,
                                        std::span<const double> x) const {
  auto out = apply_limit(x);
  if (drift && !drift->omega1.is_zero()) {
    const double scale = drift->omega1(t) * drift->g(space.norm(x));
    for (int i = 0; i < dim; ++i) out[i] += scale * drift->direction[i];
  }
  return out;
}

std::vector<double> OperatorSpec::jacobian_limit(
    std::span<const double> x) const {
  std::vector<double> jac(static_cast<size_t>(dim) * dim, 0.0);
  switch (kind) {
    case Kind::DiagonalPower: {
      for (int i = 0; i < dim; ++i) {
        const double c = std::max(std::abs(x[i]), 1e-12);
        jac[static_cast<size_t>(i) * dim + i] =
            coef * power * std::pow(c, power - 1.0);
      }
      return jac;
    }
    case Kind::LinearSPD:
    case Kind::LinearPSD:
      return matrix;
    case Kind::Custom: {
      // Forward differences; the result seeds Newton only.
      std::vector<double> base(x.begin(), x.end());
      const auto f0 = custom_apply(base);
      for (int j = 0; j < dim; ++j) {
        const double h = 1e-7 * (1.0 + std::abs(base[j]));
        base[j] += h;
        const auto f1 = custom_apply(base);
        base[j] -= h;
        for (int i = 0; i < dim; ++i)
          jac[static_cast<size_t>(i) * dim + j] = (f1[i] - f0[i]) / h;
      }
      return jac;
    }
  }
  return jac;
}

double OperatorSpec::smallest_eigenvalue() const {
  if (kind != Kind::LinearSPD && kind != Kind::LinearPSD)
    throw ParameterError("spectrum available for linear kinds only");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(as_matrix(matrix, dim));
  return eig.eigenvalues().minCoeff();
}

OperatorSpec OperatorSpec::diagonal_power(int dim, double coef, double power) {
  OperatorSpec op;
  op.kind = Kind::DiagonalPower;
  op.dim = dim;
  op.coef = coef;
  op.power = power;
  op.validate();
  return op;
}

OperatorSpec OperatorSpec::linear(Kind kind, std::vector<double> matrix,
                                  int dim) {
  OperatorSpec op;
  op.kind = kind;
  op.dim = dim;
  op.matrix = std::move(matrix);
  op.validate();
  return op;
}

double monotonicity_kappa(const OperatorSpec& op,
                          const geometry::LpSpace& space) {
  const double p = space.p();
  const double d = space.dim();
  switch (op.kind) {
    case OperatorSpec::Kind::DiagonalPower: {
      // (|u|^{s-1}u - |v|^{s-1}v)(u - v) >= 2^{1-s} |u - v|^{s+1}
      // coordinatewise, then the (s+1)-norm is compared with the p-norm.
      const double s = op.power;
      const double base = std::pow(2.0, 1.0 - s);
      if (p <= s + 1.0) return base * std::pow(d, 1.0 - (s + 1.0) / p);
      return base;
    }
    case OperatorSpec::Kind::LinearSPD:
    case OperatorSpec::Kind::LinearPSD: {
      if (p >= 2.0) return 1.0;  // ||z||_2 >= ||z||_p
      return std::pow(d, 1.0 - 2.0 / p);
    }
    case OperatorSpec::Kind::Custom:
      return 1.0;
  }
  return 1.0;
}

}  // namespace banachflow::evolution
