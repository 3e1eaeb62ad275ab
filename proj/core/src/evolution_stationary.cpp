#include "banachflow/evolution/stationary.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "banachflow/errors.hpp"

namespace banachflow::evolution {

namespace {

using geometry::LpSpace;

Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_eigen(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::vector<double> solve_regularized_point(const LpSpace& space,
                                            const OperatorSpec& op,
                                            std::span<const double> f,
                                            double alpha,
                                            std::span<const double> warm_start,
                                            double tol) {
  const int d = space.dim();
  if (static_cast<int>(f.size()) != d)
    throw DimensionError("forcing length mismatch");
  if (alpha < 0.0) throw ParameterError("alpha must be nonnegative");

  std::vector<double> y(warm_start.begin(), warm_start.end());
  if (static_cast<int>(y.size()) != d) y.assign(d, 0.0);

  auto residual = [&](const std::vector<double>& z) {
    auto r = op.apply_limit(z);
    if (alpha > 0.0) {
      const auto uz = space.duality_map(z);
      for (int i = 0; i < d; ++i) r[i] += alpha * uz[i];
    }
    for (int i = 0; i < d; ++i) r[i] -= f[i];
    return r;
  };

  const double target = tol * (space.dual_norm(f) + 1.0);
  auto r = residual(y);
  double rnorm = space.dual_norm(r);
  double best = rnorm;
  int since_progress = 0;

  for (int it = 0; it < 400; ++it) {
    if (rnorm <= target) return y;

    Eigen::MatrixXd J(d, d);
    {
      const auto ja = op.jacobian_limit(y);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) J(i, j) = ja[static_cast<size_t>(i) * d + j];
      if (alpha > 0.0) {
        const auto ju = space.duality_jacobian(y);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            J(i, j) += alpha * ju[static_cast<size_t>(i) * d + j];
      }
    }
    // Tiny ridge keeps the factorization usable when the model is singular
    // (PSD kernel directions at points with vanishing duality Jacobian).
    const double ridge = 1e-14 * (1.0 + J.norm());
    J.diagonal().array() += ridge;
    Eigen::VectorXd step = J.partialPivLu().solve(-to_eigen(r));
    if (!step.allFinite()) step = -to_eigen(r);

    bool accepted = false;
    double eta = 1.0;
    for (int bt = 0; bt < 30; ++bt) {
      std::vector<double> cand(d);
      for (int i = 0; i < d; ++i) cand[i] = y[i] + eta * step[i];
      auto rc = residual(cand);
      const double rcn = space.dual_norm(rc);
      if (rcn < rnorm) {
        y = std::move(cand);
        r = std::move(rc);
        rnorm = rcn;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) ++since_progress;

    if (rnorm <= 0.5 * best) {
      best = rnorm;
      since_progress = 0;
    } else if (++since_progress > 100) {
      throw SolverStallError(
          "stationary solve failed to halve the residual in 100 iterations");
    }
  }
  if (rnorm <= target) return y;
  throw SolverStallError("stationary solve did not reach tolerance");
}

std::vector<double> stationary_solve(const LpSpace& space,
                                     const OperatorSpec& op,
                                     std::span<const double> f, double tol) {
  std::vector<double> start(space.dim(), 0.0);
  return solve_regularized_point(space, op, f, 0.0, start, tol);
}

std::vector<std::vector<double>> kernel_basis(const OperatorSpec& op,
                                              double rel_tol) {
  if (op.kind != OperatorSpec::Kind::LinearSPD &&
      op.kind != OperatorSpec::Kind::LinearPSD)
    throw ParameterError("kernel basis available for linear kinds only");
  const int d = op.dim;
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = op.matrix[static_cast<size_t>(i) * d + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const double cut = rel_tol * std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  std::vector<std::vector<double>> basis;
  for (int k = 0; k < d; ++k)
    if (std::abs(eig.eigenvalues()[k]) <= cut)
      basis.push_back(from_eigen(eig.eigenvectors().col(k)));
  return basis;
}

std::vector<double> min_norm_solution(const LpSpace& space,
                                      const OperatorSpec& op,
                                      std::span<const double> f) {
  const int d = space.dim();
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = op.matrix[static_cast<size_t>(i) * d + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const double cut =
      1e-10 * std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);

  // Spectral pseudoinverse for the particular solution.
  Eigen::VectorXd fe = to_eigen(f);
  Eigen::VectorXd coords = eig.eigenvectors().transpose() * fe;
  Eigen::VectorXd scaled = coords;
  int kernel_dim = 0;
  for (int k = 0; k < d; ++k) {
    if (std::abs(eig.eigenvalues()[k]) <= cut) {
      scaled[k] = 0.0;
      ++kernel_dim;
    } else {
      scaled[k] = coords[k] / eig.eigenvalues()[k];
    }
  }
  Eigen::VectorXd xp = eig.eigenvectors() * scaled;
  if ((M * xp - fe).norm() > 1e-9 * (fe.norm() + 1.0))
    throw HypothesisError("forcing is not in the operator range");
  std::vector<double> x = from_eigen(xp);
  if (kernel_dim == 0) return x;

  Eigen::MatrixXd Z(d, kernel_dim);
  {
    int col = 0;
    for (int k = 0; k < d; ++k)
      if (std::abs(eig.eigenvalues()[k]) <= cut)
        Z.col(col++) = eig.eigenvectors().col(k);
  }

  // Minimize ||x_p + Z c||_p over c: Newton on the kernel component of Ux,
  // with the norm itself as the line-search merit.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(kernel_dim);
  auto point = [&](const Eigen::VectorXd& cc) {
    Eigen::VectorXd z = xp + Z * cc;
    return from_eigen(z);
  };
  for (int it = 0; it < 200; ++it) {
    const auto cur = point(c);
    const auto u = space.duality_map(cur);
    Eigen::VectorXd grad = Z.transpose() * to_eigen(u);
    const double scale = 1.0 + space.norm(cur);
    if (grad.norm() <= 1e-12 * scale) break;

    const auto ju = space.duality_jacobian(cur);
    Eigen::MatrixXd Ju(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) Ju(i, j) = ju[static_cast<size_t>(i) * d + j];
    Eigen::MatrixXd H = Z.transpose() * Ju * Z;
    H.diagonal().array() += 1e-14 * (1.0 + H.norm());
    Eigen::VectorXd step = H.partialPivLu().solve(-grad);
    if (!step.allFinite()) step = -grad;

    const double cur_norm = space.norm(cur);
    double eta = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Eigen::VectorXd cand = c + eta * step;
      if (space.norm(point(cand)) < cur_norm) {
        c = cand;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  return point(c);
}

}  // namespace banachflow::evolution
