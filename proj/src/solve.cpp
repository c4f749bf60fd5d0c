#include "specneumann/solve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specneumann {

namespace {

constexpr double kPi = std::numbers::pi;

double relative_residual(const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& b) {
  return (m * x - b).norm() / (b.norm() + 1e-300);
}

}  // namespace

SpectralSolution solve_dense(const GalerkinSystem& system) {
  const Eigen::MatrixXd& m = system.matrix;
  if (m.rows() != m.cols() || m.rows() != system.rhs.size())
    throw std::invalid_argument("solve_dense: inconsistent system shape");
  if (!m.allFinite() || !system.rhs.allFinite())
    throw std::invalid_argument("solve_dense: non-finite system entries");

  Eigen::VectorXd alpha;
  bool solved = false;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) {
    alpha = llt.solve(system.rhs);
    solved = relative_residual(m, alpha, system.rhs) < 1e-10;
  }
  if (!solved) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible())
      throw std::runtime_error("solve_dense: matrix is numerically singular");
    alpha = lu.solve(system.rhs);
    if (relative_residual(m, alpha, system.rhs) >= 1e-10)
      throw std::runtime_error("solve_dense: direct solve failed to reach residual tolerance");
  }

  SpectralSolution solution;
  solution.coefficients = alpha;
  solution.basis = system.basis;
  solution.mapping = system.mapping;
  solution.kind = system.kind;
  solution.quadrature_order = system.quadrature_order;
  solution.weighted_volume = system.weighted_volume;

  if (system.kind == ProblemKind::helmholtz) {
    solution.eval_coefficients = alpha;
  } else {
    // u_n = sum_j alpha_j (phi_j - mu_j / C); the accumulated constant is
    // expressed through the constant member phi_0.
    const int n_basis = system.basis->size();
    const double shift =
        alpha.dot(system.basis_means.tail(n_basis - 1)) / system.weighted_volume;
    const double phi0 = system.basis->eval_member(
        0, Eigen::VectorXd::Zero(system.basis->dimension()));
    solution.eval_coefficients.resize(n_basis);
    solution.eval_coefficients(0) = -shift / phi0;
    solution.eval_coefficients.tail(n_basis - 1) = alpha;
  }
  return solution;
}

double condition_number(const GalerkinSystem& system) {
  if (system.matrix.rows() == 0) throw std::invalid_argument("condition_number: empty system");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (system.matrix + system.matrix.transpose()));
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("condition_number: eigendecomposition failed");
  const Eigen::VectorXd mags = eig.eigenvalues().cwiseAbs();
  const double low = mags.minCoeff(), high = mags.maxCoeff();
  if (low <= 0.0)
    throw std::runtime_error("condition_number: matrix is numerically singular");
  return std::max(1.0, high / low);
}

EvaluatedPoints evaluate(const SpectralSolution& solution, const Eigen::MatrixXd& points) {
  const int d = solution.basis->dimension();
  if (points.cols() != d)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  const Eigen::Index count = points.rows();
  for (Eigen::Index i = 0; i < count; ++i)
    if (points.row(i).norm() > 1.0 + 1e-12)
      throw std::invalid_argument("evaluate: point outside the closed unit ball");

  EvaluatedPoints out;
  out.values.resize(count);
  out.omega_points.resize(count, d);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < count; ++i) {
    Eigen::VectorXd vals;
    solution.basis->eval_values(points.row(i), vals);
    out.values(i) = solution.eval_coefficients.dot(vals);
    out.omega_points.row(i) = solution.mapping->forward(points.row(i));
  }
  return out;
}

Eigen::MatrixXd evaluation_grid(int dimension) {
  if (dimension == 2) {
    Eigen::MatrixXd grid(11 * 20, 2);
    Eigen::Index at = 0;
    for (int i = 0; i <= 10; ++i)
      for (int j = 1; j <= 20; ++j) {
        const double r = i / 10.0, th = j * kPi / 10.0;
        grid.row(at++) << r * std::cos(th), r * std::sin(th);
      }
    return grid;
  }
  if (dimension == 3) {
    Eigen::MatrixXd grid(10 * 10 * 20, 3);
    Eigen::Index at = 0;
    for (int i = 1; i <= 10; ++i)
      for (int j = 1; j <= 10; ++j)
        for (int k = 1; k <= 20; ++k) {
          const double rho = i / 10.0;
          const double th = (j - 0.5) * kPi / 10.0;
          const double ph = k * kPi / 10.0;
          grid.row(at++) << rho * std::sin(th) * std::cos(ph),
              rho * std::sin(th) * std::sin(ph), rho * std::cos(th);
        }
    return grid;
  }
  throw std::invalid_argument("evaluation_grid: dimension must be 2 or 3");
}

double max_grid_error(const SpectralSolution& solution, const ScalarField& exact_on_omega) {
  if (!exact_on_omega) throw std::invalid_argument("max_grid_error: no exact solution");
  const int d = solution.basis->dimension();
  const Eigen::MatrixXd grid = evaluation_grid(d);
  const EvaluatedPoints numeric = evaluate(solution, grid);

  double offset = 0.0;
  if (solution.kind == ProblemKind::pure_poisson) {
    const QuadratureRule rule = d == 2 ? disk_rule(solution.quadrature_order)
                                       : ball_rule(solution.quadrature_order);
    offset = weighted_mean(
        [&](const Eigen::VectorXd& x) { return exact_on_omega(solution.mapping->forward(x)); },
        *solution.mapping, rule, solution.weighted_volume);
  }

  double worst = 0.0;
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    const double exact = exact_on_omega(numeric.omega_points.row(i)) - offset;
    worst = std::max(worst, std::abs(exact - numeric.values(i)));
  }
  return worst;
}

}  // namespace specneumann
