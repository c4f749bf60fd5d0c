#include "specneumann/galerkin.hpp"

#include <Eigen/LU>

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>
#include <vector>

namespace specneumann {

namespace {

struct NodeData {
  Eigen::MatrixXd points;                // nodes x d
  Eigen::VectorXd w_det;                 // w_i |det J_i|
  std::vector<Eigen::MatrixXd> jac_inv;  // d x d per node
  Eigen::VectorXd gamma_vals;            // empty unless helmholtz
  Eigen::VectorXd f_vals;
};

struct InteriorAccumulators {
  Eigen::MatrixXd matrix;     // stiffness + gamma mass over the full basis
  Eigen::VectorXd rhs;        // int f~ phi |det J|
  Eigen::VectorXd means;      // mu_j = int phi_j |det J|
  double f_integral = 0.0;    // int f~ |det J|
};

NodeData precompute_nodes(const ProblemSpec& spec, const QuadratureRule& rule) {
  const Eigen::Index count = rule.size();
  const int d = spec.dimension;
  NodeData data;
  data.points = rule.nodes;
  data.w_det.resize(count);
  data.jac_inv.resize(count);
  data.f_vals.resize(count);
  const bool has_gamma = spec.kind == ProblemKind::helmholtz;
  if (has_gamma) data.gamma_vals.resize(count);

#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::VectorXd x = rule.nodes.row(i).head(d);
    const Coefficients coef = coefficient_matrix(*spec.mapping, x);
    const Eigen::VectorXd s = spec.mapping->forward(x);
    data.w_det(i) = rule.weights(i) * coef.jac_det;
    data.jac_inv[i] = coef.jac_inv;
    data.f_vals(i) = spec.source ? spec.source(s) : 0.0;
    if (has_gamma) data.gamma_vals(i) = spec.gamma(s);
  }
  return data;
}

// Reference kernel: one rank-d and one rank-1 update per node, in node
// order. Kept simple; the parallel kernel is checked against it.
InteriorAccumulators interior_serial(const BasisSet& basis, const NodeData& data) {
  const int n_basis = basis.size();
  InteriorAccumulators acc;
  acc.matrix.setZero(n_basis, n_basis);
  acc.rhs.setZero(n_basis);
  acc.means.setZero(n_basis);

  Eigen::VectorXd vals;
  Eigen::MatrixXd grads;
  const bool has_gamma = data.gamma_vals.size() > 0;
  for (Eigen::Index i = 0; i < data.w_det.size(); ++i) {
    basis.eval_all(data.points.row(i), vals, grads);
    const Eigen::MatrixXd p = grads * data.jac_inv[i];
    acc.matrix.noalias() += data.w_det(i) * (p * p.transpose());
    if (has_gamma)
      acc.matrix.noalias() += data.w_det(i) * data.gamma_vals(i) * (vals * vals.transpose());
    acc.rhs.noalias() += data.w_det(i) * data.f_vals(i) * vals;
    acc.means.noalias() += data.w_det(i) * vals;
    acc.f_integral += data.w_det(i) * data.f_vals(i);
  }
  return acc;
}

// Blocked kernel: nodes are processed in chunks; each chunk contributes a
// symmetric rank update built from the A(x)-scaled gradients and the
// gamma-scaled values. Threads accumulate locally and are reduced in
// thread order, so results are reproducible for a fixed thread count.
InteriorAccumulators interior_parallel(const BasisSet& basis, const NodeData& data) {
  const int n_basis = basis.size();
  const int d = basis.dimension();
  const Eigen::Index count = data.w_det.size();
  const bool has_gamma = data.gamma_vals.size() > 0;
  constexpr Eigen::Index kChunk = 64;
  const Eigen::Index n_chunks = (count + kChunk - 1) / kChunk;

  const int n_threads = omp_get_max_threads();
  std::vector<InteriorAccumulators> partial(n_threads);

#pragma omp parallel num_threads(n_threads)
  {
    const int tid = omp_get_thread_num();
    InteriorAccumulators& acc = partial[tid];
    acc.matrix.setZero(n_basis, n_basis);
    acc.rhs.setZero(n_basis);
    acc.means.setZero(n_basis);

    Eigen::VectorXd vals;
    Eigen::MatrixXd grads;
    Eigen::MatrixXd plus_block(n_basis, kChunk * (d + 1));
    Eigen::MatrixXd minus_block(n_basis, kChunk);
    Eigen::MatrixXd value_block(n_basis, kChunk);
    Eigen::VectorXd f_scale(kChunk), mean_scale(kChunk);

#pragma omp for schedule(static)
    for (Eigen::Index c = 0; c < n_chunks; ++c) {
      const Eigen::Index begin = c * kChunk;
      const Eigen::Index len = std::min(kChunk, count - begin);
      Eigen::Index n_plus = 0, n_minus = 0;
      for (Eigen::Index k = 0; k < len; ++k) {
        const Eigen::Index i = begin + k;
        basis.eval_all(data.points.row(i), vals, grads);
        const double sw = std::sqrt(data.w_det(i));
        plus_block.middleCols(n_plus, d).noalias() = grads * (sw * data.jac_inv[i]);
        n_plus += d;
        value_block.col(k) = sw * vals;
        f_scale(k) = sw * data.f_vals(i);
        mean_scale(k) = sw;
        if (has_gamma) {
          const double g = data.gamma_vals(i);
          if (g >= 0.0)
            plus_block.col(n_plus++) = std::sqrt(g) * value_block.col(k);
          else
            minus_block.col(n_minus++) = std::sqrt(-g) * value_block.col(k);
        }
        acc.f_integral += data.w_det(i) * data.f_vals(i);
      }
      acc.matrix.selfadjointView<Eigen::Lower>().rankUpdate(plus_block.leftCols(n_plus), 1.0);
      if (n_minus > 0)
        acc.matrix.selfadjointView<Eigen::Lower>().rankUpdate(minus_block.leftCols(n_minus), -1.0);
      acc.rhs.noalias() += value_block.leftCols(len) * f_scale.head(len);
      acc.means.noalias() += value_block.leftCols(len) * mean_scale.head(len);
    }
  }

  InteriorAccumulators total = std::move(partial[0]);
  for (int t = 1; t < n_threads; ++t) {
    total.matrix += partial[t].matrix;
    total.rhs += partial[t].rhs;
    total.means += partial[t].means;
    total.f_integral += partial[t].f_integral;
  }
  total.matrix = total.matrix.selfadjointView<Eigen::Lower>();
  return total;
}

QuadratureRule volume_rule_for(int dimension, int q) {
  return dimension == 2 ? disk_rule(q) : ball_rule(q);
}

QuadratureRule boundary_rule_for(int dimension, int q) {
  return dimension == 2 ? circle_boundary_rule(q) : sphere_boundary_rule(q);
}

void check_spec(const ProblemSpec& spec) {
  if (spec.dimension != 2 && spec.dimension != 3)
    throw std::invalid_argument("problem dimension must be 2 or 3");
  if (!spec.mapping) throw std::invalid_argument("problem needs a mapping");
  if (spec.mapping->dimension() != spec.dimension)
    throw std::invalid_argument("mapping dimension does not match the problem");
  if (spec.degree < 0) throw std::invalid_argument("degree must be >= 0");
  if (spec.kind == ProblemKind::helmholtz && !spec.gamma)
    throw std::invalid_argument("helmholtz mode needs a gamma field (use pure_poisson for gamma == 0)");
}

int effective_order(const ProblemSpec& spec) {
  const int q = spec.quadrature_order < 0 ? spec.degree + 4 : spec.quadrature_order;
  if (q < spec.degree + 1)
    std::fprintf(stderr,
                 "warning: quadrature order %d below degree+1 = %d; assembled "
                 "integrals will be inexact\n",
                 q, spec.degree + 1);
  return std::max(q, 1);
}

}  // namespace

GalerkinSystem assemble(const ProblemSpec& spec, AssemblyBackend backend) {
  check_spec(spec);
  const int q = effective_order(spec);
  const int d = spec.dimension;

  auto basis = std::make_shared<const BasisSet>(
      d == 2 ? BasisSet::disk(spec.degree) : BasisSet::ball(spec.degree));
  const QuadratureRule volume = volume_rule_for(d, q);
  const QuadratureRule boundary = boundary_rule_for(d, q);

  const NodeData data = precompute_nodes(spec, volume);
  if (spec.kind == ProblemKind::helmholtz &&
      data.gamma_vals.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument(
        "gamma vanishes identically; the helmholtz-mode system is singular "
        "(use pure_poisson mode)");

  InteriorAccumulators acc = backend == AssemblyBackend::serial
                                 ? interior_serial(*basis, data)
                                 : interior_parallel(*basis, data);

  // Boundary load: int g~ phi |J_bdy| over the reference boundary.
  Eigen::VectorXd rhs = acc.rhs;
  double g_integral = 0.0;
  if (spec.flux) {
    Eigen::VectorXd vals;
    for (Eigen::Index i = 0; i < boundary.size(); ++i) {
      const Eigen::VectorXd param = boundary.nodes.row(i);
      const BoundaryFrame frame = boundary_frame(*spec.mapping, param);
      const double gw = boundary.weights(i) * spec.flux(param) * frame.factor;
      basis->eval_values(frame.point_ball, vals);
      rhs.noalias() += gw * vals;
      g_integral += gw;
    }
  }

  GalerkinSystem system;
  system.kind = spec.kind;
  system.basis = basis;
  system.mapping = spec.mapping;
  system.quadrature_order = q;

  if (spec.kind == ProblemKind::helmholtz) {
    system.matrix = std::move(acc.matrix);
    system.rhs = std::move(rhs);
    return system;
  }

  // Constrained mode: drop the constant member and shift the remaining
  // ones by mu_j / C, which only changes the load vector.
  const double c_volume = data.w_det.sum();
  const int n_basis = basis->size();
  system.weighted_volume = c_volume;
  system.basis_means = acc.means;
  system.matrix = acc.matrix.bottomRightCorner(n_basis - 1, n_basis - 1);
  const Eigen::VectorXd shifted =
      rhs - ((acc.f_integral + g_integral) / c_volume) * acc.means;
  system.rhs = shifted.tail(n_basis - 1);
  return system;
}

ConstrainedBasis constrained_basis(std::shared_ptr<const BasisSet> basis,
                                   const DomainMapping& mapping, int quadrature_order) {
  if (!basis) throw std::invalid_argument("constrained_basis: null basis");
  // Member 0 must be the constant function.
  Eigen::VectorXd g0(basis->dimension());
  Eigen::VectorXd probe = Eigen::VectorXd::Constant(basis->dimension(), 0.31);
  const double v_probe = basis->eval_member(0, probe, &g0);
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(basis->dimension());
  if (g0.cwiseAbs().maxCoeff() > 1e-13 ||
      std::abs(basis->eval_member(0, origin) - v_probe) > 1e-13)
    throw std::invalid_argument("constrained_basis: first member is not constant");

  const QuadratureRule volume = volume_rule_for(basis->dimension(), quadrature_order);
  ConstrainedBasis out;
  out.basis = std::move(basis);
  out.means.setZero(out.basis->size());
  out.weighted_volume = 0.0;
  Eigen::VectorXd vals;
  for (Eigen::Index i = 0; i < volume.size(); ++i) {
    const Eigen::VectorXd x = volume.nodes.row(i);
    const double det = std::abs(mapping.jacobian(x).determinant());
    out.basis->eval_values(x, vals);
    out.means.noalias() += volume.weights(i) * det * vals;
    out.weighted_volume += volume.weights(i) * det;
  }
  return out;
}

double compatibility_residual(const ProblemSpec& spec) {
  check_spec(spec);
  const int q = effective_order(spec);
  const QuadratureRule volume = volume_rule_for(spec.dimension, q);
  const QuadratureRule boundary = boundary_rule_for(spec.dimension, q);

  double total = 0.0;
  for (Eigen::Index i = 0; i < volume.size(); ++i) {
    const Eigen::VectorXd x = volume.nodes.row(i);
    const double det = std::abs(spec.mapping->jacobian(x).determinant());
    total += volume.weights(i) * det * (spec.source ? spec.source(spec.mapping->forward(x)) : 0.0);
  }
  if (spec.flux)
    for (Eigen::Index i = 0; i < boundary.size(); ++i) {
      const Eigen::VectorXd param = boundary.nodes.row(i);
      total += boundary.weights(i) * spec.flux(param) *
               boundary_factor(*spec.mapping, param);
    }
  return total;
}

double weighted_mean(const std::function<double(const Eigen::VectorXd&)>& f_on_ball,
                     const DomainMapping& mapping, const QuadratureRule& volume_rule,
                     double weighted_volume) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < volume_rule.size(); ++i) {
    const Eigen::VectorXd x = volume_rule.nodes.row(i);
    acc += volume_rule.weights(i) * std::abs(mapping.jacobian(x).determinant()) *
           f_on_ball(x);
  }
  return acc / weighted_volume;
}

std::function<double(const Eigen::VectorXd&)> mean_zero_projection(
    std::function<double(const Eigen::VectorXd&)> f_on_ball,
    const DomainMapping& mapping, const QuadratureRule& volume_rule,
    double weighted_volume) {
  const double mean = weighted_mean(f_on_ball, mapping, volume_rule, weighted_volume);
  return [f = std::move(f_on_ball), mean](const Eigen::VectorXd& x) {
    return f(x) - mean;
  };
}

}  // namespace specneumann
