#pragma once

#include "specneumann/galerkin.hpp"

#include <memory>

namespace specneumann {

/// A solved coefficient vector over the (possibly constrained) basis,
/// together with everything needed to evaluate it on the reference
/// domain. `eval_coefficients` is the full-length vector with the
/// constrained-mode constant shift folded into the constant member, so
/// evaluation is a plain dot product either way.
struct SpectralSolution {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd eval_coefficients;
  std::shared_ptr<const BasisSet> basis;
  std::shared_ptr<const DomainMapping> mapping;
  ProblemKind kind = ProblemKind::helmholtz;
  int quadrature_order = 0;
  double weighted_volume = 0.0;
};

/// Direct dense solve: Cholesky first, LU with pivoting as fallback.
/// Throws if the factorization fails or the residual exceeds 1e-10
/// relative to the load vector.
SpectralSolution solve_dense(const GalerkinSystem& system);

/// Spectral (2-norm) condition number via a full symmetric
/// eigendecomposition.
double condition_number(const GalerkinSystem& system);

struct EvaluatedPoints {
  Eigen::VectorXd values;
  Eigen::MatrixXd omega_points;  // the mapped coordinates, one row per point
};

/// Evaluates the solution at reference points (rows of `points`); each
/// point must lie in the closed unit disk/ball.
EvaluatedPoints evaluate(const SpectralSolution& solution, const Eigen::MatrixXd& points);

/// The error-measurement grid on the reference domain: the polar grid
/// r = i/10 (i=0..10), theta = j pi/10 (j=1..20) for d=2, and a
/// 10 x 10 x 20 spherical product grid with pole-free colatitudes for
/// d=3. One row per point.
Eigen::MatrixXd evaluation_grid(int dimension);

/// max over the grid of |u*(Phi(x)) - u_n(x)|. In constrained mode the
/// exact solution is first shifted to zero weighted mean.
double max_grid_error(const SpectralSolution& solution, const ScalarField& exact_on_omega);

}  // namespace specneumann
