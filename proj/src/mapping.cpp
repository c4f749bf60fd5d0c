#include "specneumann/mapping.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specneumann {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularTol = 1e-13;

Eigen::MatrixXd inverse_small(const Eigen::MatrixXd& j, double det) {
  const int d = static_cast<int>(j.rows());
  Eigen::MatrixXd inv(d, d);
  if (d == 2) {
    inv << j(1, 1), -j(0, 1), -j(1, 0), j(0, 0);
    inv /= det;
  } else {
    inv(0, 0) = j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1);
    inv(0, 1) = j(0, 2) * j(2, 1) - j(0, 1) * j(2, 2);
    inv(0, 2) = j(0, 1) * j(1, 2) - j(0, 2) * j(1, 1);
    inv(1, 0) = j(1, 2) * j(2, 0) - j(1, 0) * j(2, 2);
    inv(1, 1) = j(0, 0) * j(2, 2) - j(0, 2) * j(2, 0);
    inv(1, 2) = j(0, 2) * j(1, 0) - j(0, 0) * j(1, 2);
    inv(2, 0) = j(1, 0) * j(2, 1) - j(1, 1) * j(2, 0);
    inv(2, 1) = j(0, 1) * j(2, 0) - j(0, 0) * j(2, 1);
    inv(2, 2) = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
    inv /= det;
  }
  return inv;
}

class IdentityMap final : public DomainMapping {
 public:
  explicit IdentityMap(int d) : d_(d) {}
  int dimension() const override { return d_; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override { return x; }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override {
    return Eigen::MatrixXd::Identity(d_, d_);
  }
  bool has_inverse() const override { return true; }
  Eigen::VectorXd inverse(const Eigen::VectorXd& s) const override { return s; }

 private:
  int d_;
};

class PlanarQuadraticMap final : public DomainMapping {
 public:
  explicit PlanarQuadraticMap(double a) : a_(a) {}
  int dimension() const override { return 2; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd s(2);
    s << x(0) - x(1) + a_ * x(0) * x(0), x(0) + x(1);
    return s;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd j(2, 2);
    j << 1.0 + 2.0 * a_ * x(0), -1.0, 1.0, 1.0;
    return j;
  }
  bool has_inverse() const override { return true; }
  Eigen::VectorXd inverse(const Eigen::VectorXd& s) const override {
    const double root = -1.0 + std::sqrt(1.0 + a_ * (s(0) + s(1)));
    Eigen::VectorXd x(2);
    x << root / a_, (a_ * s(1) - root) / a_;
    return x;
  }

 private:
  double a_;
};

class LinearMap3D final : public DomainMapping {
 public:
  explicit LinearMap3D(const Eigen::Matrix3d& m) : m_(m), inv_(m.inverse()) {}
  int dimension() const override { return 3; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override { return m_ * x; }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override { return m_; }
  bool has_inverse() const override { return true; }
  Eigen::VectorXd inverse(const Eigen::VectorXd& s) const override { return inv_ * s; }

 private:
  Eigen::Matrix3d m_, inv_;
};

class StarShapedMap final : public DomainMapping {
 public:
  StarShapedMap(SphereFunction r, int es) : r_(std::move(r)), es_(es) {}

  int dimension() const override { return 3; }

  Eigen::VectorXd forward(const Eigen::VectorXd& xv) const override {
    const Eigen::Vector3d x = xv.head<3>();
    const double rho = x.norm();
    if (rho <= 0.5) return x;
    const double theta = std::atan2(std::hypot(x.x(), x.y()), x.z());
    const double phi = std::atan2(x.y(), x.x());
    const double lam = 1.0 + blend(rho) * (r_.value(theta, phi) - rho) / rho;
    return lam * x;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& xv) const override {
    const Eigen::Vector3d x = xv.head<3>();
    const double rho = x.norm();
    if (rho <= 0.5) return Eigen::Matrix3d::Identity();

    const double rxy = std::hypot(x.x(), x.y());
    if (rxy < 1e-13 * rho) return fd_jacobian(x);  // polar axis

    const double theta = std::atan2(rxy, x.z());
    const double phi = std::atan2(x.y(), x.x());
    const double st = rxy / rho, ct = x.z() / rho;
    const double cp = x.x() / rxy, sp = x.y() / rxy;

    const double t = blend(rho), dt = blend_deriv(rho);
    const double rv = r_.value(theta, phi);
    const double lam = 1.0 + t * (rv - rho) / rho;
    const double lam_rho = dt * (rv - rho) / rho - t * rv / (rho * rho);
    const double lam_theta = t * r_.dtheta(theta, phi) / rho;
    const double lam_phi = t * r_.dphi(theta, phi) / rho;

    const Eigen::Vector3d e_rho = x / rho;
    const Eigen::Vector3d e_theta(ct * cp, ct * sp, -st);
    const Eigen::Vector3d e_phi(-sp, cp, 0.0);
    const Eigen::Vector3d grad_lam =
        lam_rho * e_rho + (lam_theta / rho) * e_theta + (lam_phi / (rho * st)) * e_phi;

    return lam * Eigen::Matrix3d::Identity() + x * grad_lam.transpose();
  }

 private:
  double blend(double rho) const {
    return rho <= 0.5 ? 0.0 : std::exp2(es_) * std::pow(rho - 0.5, es_);
  }
  double blend_deriv(double rho) const {
    return rho <= 0.5 ? 0.0 : es_ * std::exp2(es_) * std::pow(rho - 0.5, es_ - 1);
  }
  Eigen::Matrix3d fd_jacobian(const Eigen::Vector3d& x) const {
    const double h = 1e-7;
    Eigen::Matrix3d j;
    for (int c = 0; c < 3; ++c) {
      Eigen::Vector3d xp = x, xm = x;
      xp(c) += h;
      xm(c) -= h;
      j.col(c) = (forward(xp) - forward(xm)) / (2.0 * h);
    }
    return j;
  }

  SphereFunction r_;
  int es_;
};

}  // namespace

Eigen::VectorXd DomainMapping::inverse(const Eigen::VectorXd&) const {
  throw std::logic_error("mapping does not provide an inverse");
}

Coefficients coefficient_matrix(const DomainMapping& map, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd j = map.jacobian(x);
  const double det = j.determinant();
  if (std::abs(det) < kSingularTol)
    throw std::runtime_error("coefficient_matrix: singular Jacobian");
  Coefficients out;
  out.jac_inv = inverse_small(j, det);
  out.jac_det = std::abs(det);
  out.det_sign = det > 0.0 ? 1.0 : -1.0;
  const int d = map.dimension();
  out.a.resize(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c <= r; ++c) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) acc += out.jac_inv(r, k) * out.jac_inv(c, k);
      out.a(r, c) = acc;
      out.a(c, r) = acc;
    }
  return out;
}

std::shared_ptr<const DomainMapping> identity_map(int dimension) {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("identity_map: dimension must be 2 or 3");
  return std::make_shared<IdentityMap>(dimension);
}

std::shared_ptr<const DomainMapping> planar_quadratic_map(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("planar_quadratic_map: parameter must lie in (0,1)");
  return std::make_shared<PlanarQuadraticMap>(a);
}

std::shared_ptr<const DomainMapping> linear_map_3d(const Eigen::Matrix3d& m) {
  if (std::abs(m.determinant()) < kSingularTol)
    throw std::invalid_argument("linear_map_3d: matrix is singular");
  return std::make_shared<LinearMap3D>(m);
}

double test_surface_R(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  return 2.0 + 0.75 * std::cos(2.0 * phi) * st * st * (7.0 * ct * ct - 1.0);
}

SphereFunction test_surface() {
  SphereFunction r;
  r.value = test_surface_R;
  r.dtheta = [](double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    return 0.75 * std::cos(2.0 * phi) * st * ct * (28.0 * ct * ct - 16.0);
  };
  r.dphi = [](double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    return -1.5 * std::sin(2.0 * phi) * st * st * (7.0 * ct * ct - 1.0);
  };
  return r;
}

std::shared_ptr<const DomainMapping> star_shaped_map(SphereFunction R, int smoothness_es) {
  if (smoothness_es < 2)
    throw std::invalid_argument("star_shaped_map: smoothness parameter must be >= 2");
  for (int i = 0; i <= 60; ++i)
    for (int j = 0; j < 120; ++j) {
      const double theta = kPi * i / 60.0, phi = 2.0 * kPi * j / 120.0;
      if (!(R.value(theta, phi) > 1.0))
        throw std::invalid_argument("star_shaped_map: surface radius must exceed 1");
    }
  return std::make_shared<StarShapedMap>(std::move(R), smoothness_es);
}

Eigen::VectorXd boundary_point(int dimension, const Eigen::VectorXd& param) {
  Eigen::VectorXd x(dimension);
  if (dimension == 2) {
    x << std::cos(param(0)), std::sin(param(0));
  } else {
    const double st = std::sin(param(0)), ct = std::cos(param(0));
    x << st * std::cos(param(1)), st * std::sin(param(1)), ct;
  }
  return x;
}

BoundaryFrame boundary_frame(const DomainMapping& map, const Eigen::VectorXd& param) {
  const int d = map.dimension();
  BoundaryFrame frame;
  frame.point_ball = boundary_point(d, param);
  frame.point_omega = map.forward(frame.point_ball);
  const Eigen::MatrixXd j = map.jacobian(frame.point_ball);
  const double sign = j.determinant() > 0.0 ? 1.0 : -1.0;
  if (d == 2) {
    const double theta = param(0);
    Eigen::Vector2d tangent_ref(-std::sin(theta), std::cos(theta));
    const Eigen::Vector2d chi_prime = j * tangent_ref;
    frame.factor = chi_prime.norm();
    frame.normal = sign / frame.factor * Eigen::Vector2d(chi_prime.y(), -chi_prime.x());
  } else {
    const double theta = param(0), phi = param(1);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const Eigen::Vector3d y_theta(ct * cp, ct * sp, -st);
    const Eigen::Vector3d y_phi(-st * sp, st * cp, 0.0);
    const Eigen::Vector3d t_theta = j * y_theta;
    const Eigen::Vector3d t_phi = j * y_phi;
    const Eigen::Vector3d cross = t_theta.cross(t_phi);
    frame.factor = cross.norm();
    frame.normal = sign / frame.factor * cross;
  }
  return frame;
}

double boundary_factor(const DomainMapping& map, const Eigen::VectorXd& param) {
  return boundary_frame(map, param).factor;
}

void validate_invertibility(const DomainMapping& map) {
  const int d = map.dimension();
  double min_det = 0.0, max_det = 0.0;
  bool first = true;
  auto visit = [&](const Eigen::VectorXd& x) {
    const double det = map.jacobian(x).determinant();
    if (first) {
      min_det = max_det = det;
      first = false;
    } else {
      min_det = std::min(min_det, det);
      max_det = std::max(max_det, det);
    }
  };
  if (d == 2) {
    for (int i = 0; i <= 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const double r = i / 100.0, th = 2.0 * kPi * j / 100.0;
        visit(Eigen::Vector2d(r * std::cos(th), r * std::sin(th)));
      }
  } else {
    for (int i = 0; i <= 24; ++i)
      for (int j = 1; j < 24; ++j)
        for (int k = 0; k < 24; ++k) {
          const double rho = i / 24.0, th = kPi * j / 24.0, ph = 2.0 * kPi * k / 24.0;
          Eigen::Vector3d x(rho * std::sin(th) * std::cos(ph),
                            rho * std::sin(th) * std::sin(ph), rho * std::cos(th));
          visit(x);
        }
  }
  if (min_det * max_det <= 0.0 || std::min(std::abs(min_det), std::abs(max_det)) < kSingularTol)
    throw std::runtime_error("mapping Jacobian vanishes or changes sign on the reference domain");
}

}  // namespace specneumann
