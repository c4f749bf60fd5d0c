#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>

namespace specneumann {

/// A twice-differentiable invertible map from the closed unit disk/ball
/// onto the physical domain. Implementations are immutable and all
/// evaluations are pure, so instances may be shared across threads.
class DomainMapping {
 public:
  virtual ~DomainMapping() = default;

  virtual int dimension() const = 0;
  virtual Eigen::VectorXd forward(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const = 0;

  virtual bool has_inverse() const { return false; }
  virtual Eigen::VectorXd inverse(const Eigen::VectorXd& s) const;
};

/// Transformed-problem coefficients at one reference point:
/// a = J^{-1} J^{-T} (exactly symmetric) and |det J|.
struct Coefficients {
  Eigen::MatrixXd a;
  Eigen::MatrixXd jac_inv;
  double jac_det = 0.0;   // |det J|
  double det_sign = 1.0;  // sign of det J
};

Coefficients coefficient_matrix(const DomainMapping& map, const Eigen::VectorXd& x);

std::shared_ptr<const DomainMapping> identity_map(int dimension);

/// (s,t) = (x - y + a x^2, x + y), the planar test map; 0 < a < 1.
std::shared_ptr<const DomainMapping> planar_quadratic_map(double a);

/// s = M x with an invertible 3x3 matrix M.
std::shared_ptr<const DomainMapping> linear_map_3d(const Eigen::Matrix3d& m);

/// A smooth radius function on the sphere with its angular partials.
struct SphereFunction {
  std::function<double(double, double)> value;   // R(theta, phi)
  std::function<double(double, double)> dtheta;
  std::function<double(double, double)> dphi;
};

/// R(theta,phi) = 2 + (3/4) cos(2 phi) sin^2(theta) (7 cos^2(theta) - 1).
double test_surface_R(double theta, double phi);
SphereFunction test_surface();

/// Star-shaped map: the identity on the inner half-ball, blending to the
/// boundary radius R through t(rho) = 2^es (rho - 1/2)^es on (1/2, 1].
/// Requires es >= 2 and R > 1 everywhere (checked by sampling).
std::shared_ptr<const DomainMapping> star_shaped_map(SphereFunction R, int smoothness_es);

/// Point on the reference boundary for a parameter value: (cos t, sin t)
/// for d=2; the spherical-coordinate point for (theta, phi) when d=3.
Eigen::VectorXd boundary_point(int dimension, const Eigen::VectorXd& param);

/// Geometry of the mapped boundary at one parameter value: the reference
/// point x, its image s, the outward unit normal of the image domain, and
/// the measure factor (|chi'| for d=2, the cross-product norm for d=3).
struct BoundaryFrame {
  Eigen::VectorXd point_ball;
  Eigen::VectorXd point_omega;
  Eigen::VectorXd normal;
  double factor = 0.0;
};

BoundaryFrame boundary_frame(const DomainMapping& map, const Eigen::VectorXd& param);
double boundary_factor(const DomainMapping& map, const Eigen::VectorXd& param);

/// Samples det J over a dense grid (>= 10^4 points) and throws if it
/// vanishes or changes sign; a guard for user-supplied mappings.
void validate_invertibility(const DomainMapping& map);

}  // namespace specneumann
