#pragma once

#include <Eigen/Core>

namespace specneumann {

/// A quadrature rule over a fixed reference region. `nodes` holds one row
/// per node; columns are Cartesian coordinates for volume rules (disk,
/// ball) and parameter coordinates for boundary rules (theta for the
/// circle, theta/phi for the sphere). All weights are positive and sum to
/// the measure of the reference region.
struct QuadratureRule {
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  int exactness_degree = -1;

  Eigen::Index size() const { return weights.size(); }
};

/// (q+1)-point Gauss-Legendre rule on [0,1], exact through degree 2q+1.
QuadratureRule gauss_legendre_01(int q);

/// Gauss-Legendre rule with n points on [-1,1], exact through degree 2n-1.
/// Nodes found by Newton iteration on the Legendre recurrence.
QuadratureRule gauss_legendre_m11(int n);

/// Product rule on the unit disk: (q+1) Gauss-Legendre radii on [0,1]
/// crossed with 2q+1 equispaced angles. Exact for all bivariate
/// polynomials of total degree <= 2q. Nodes stored as Cartesian (x, y).
QuadratureRule disk_rule(int q);

/// Product rule on the unit ball: Gauss-Legendre in radius (the r^2
/// volume factor folded into the weights), Gauss-Legendre in cos(theta),
/// trapezoidal with 2q+1 points in phi. Exact for all trivariate
/// polynomials of total degree <= 2q. Nodes stored as Cartesian (x, y, z).
QuadratureRule ball_rule(int q);

/// Trapezoidal rule with 2q+1 equispaced nodes on the circle parameter
/// theta in [0, 2*pi). Spectrally accurate for smooth periodic integrands.
QuadratureRule circle_boundary_rule(int q);

/// Product rule for the unit-sphere surface measure, parameterized by
/// (theta, phi): Gauss-Legendre in cos(theta) crossed with a 2q+1 point
/// trapezoidal rule in phi. The sin(theta) surface factor is absorbed in
/// the weights, so summing w*f(theta, phi) integrates f dS.
QuadratureRule sphere_boundary_rule(int q);

}  // namespace specneumann
