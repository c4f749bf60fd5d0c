#pragma once

#include "specneumann/basis.hpp"
#include "specneumann/mapping.hpp"
#include "specneumann/quadrature.hpp"

#include <functional>
#include <memory>

namespace specneumann {

/// Scalar data given on the physical domain; sampled at mapped
/// quadrature nodes during assembly.
using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// Boundary flux as a function of the reference boundary parameter
/// (theta for d=2, (theta, phi) for d=3).
using BoundaryField = std::function<double(const Eigen::VectorXd&)>;

/// helmholtz: -Laplace(u) + gamma u = f with gamma bounded away from
/// zero, solved over the full polynomial space. pure_poisson: gamma == 0,
/// solved over the zero-weighted-mean subspace in the shifted basis.
enum class ProblemKind { helmholtz, pure_poisson };

struct ProblemSpec {
  int dimension = 2;
  ProblemKind kind = ProblemKind::helmholtz;
  ScalarField gamma;    // ignored in pure_poisson mode
  ScalarField source;   // f
  BoundaryField flux;   // g, parameterized over the reference boundary
  std::shared_ptr<const DomainMapping> mapping;
  int degree = 4;
  int quadrature_order = -1;  // -1 selects degree + 4
};

enum class AssemblyBackend { serial, parallel };

struct GalerkinSystem {
  Eigen::MatrixXd matrix;  // N x N, or (N-1) x (N-1) in pure_poisson mode
  Eigen::VectorXd rhs;
  ProblemKind kind = ProblemKind::helmholtz;
  std::shared_ptr<const BasisSet> basis;
  std::shared_ptr<const DomainMapping> mapping;
  int quadrature_order = 0;
  // Constrained-mode data: C = int |det J| and the per-member weighted
  // integrals mu_j = int phi_j |det J|; empty in helmholtz mode.
  double weighted_volume = 0.0;
  Eigen::VectorXd basis_means;
};

/// Assembles the transformed Galerkin system. Serial and parallel
/// backends accumulate in different orders but agree to roundoff.
GalerkinSystem assemble(const ProblemSpec& spec,
                        AssemblyBackend backend = AssemblyBackend::parallel);

/// The shifted basis phi_j - mu_j / C whose members have zero weighted
/// mean; member 0 degenerates to zero and is dropped by the constrained
/// assembly. Throws if member 0 of the basis is not constant.
struct ConstrainedBasis {
  std::shared_ptr<const BasisSet> basis;
  Eigen::VectorXd means;
  double weighted_volume = 0.0;
};

ConstrainedBasis constrained_basis(std::shared_ptr<const BasisSet> basis,
                                   const DomainMapping& mapping, int quadrature_order);

/// Residual of the pure-Neumann solvability condition,
/// int_Omega f + int_boundary g, evaluated through the reference-domain
/// transforms. Reported to the caller; never enforced.
double compatibility_residual(const ProblemSpec& spec);

/// Weighted mean (1/C) int f |det J| of a function given on the
/// reference domain; subtracting it applies the zero-mean projection.
double weighted_mean(const std::function<double(const Eigen::VectorXd&)>& f_on_ball,
                     const DomainMapping& mapping, const QuadratureRule& volume_rule,
                     double weighted_volume);

/// Convenience wrapper returning the projected function itself.
std::function<double(const Eigen::VectorXd&)> mean_zero_projection(
    std::function<double(const Eigen::VectorXd&)> f_on_ball,
    const DomainMapping& mapping, const QuadratureRule& volume_rule,
    double weighted_volume);

}  // namespace specneumann
