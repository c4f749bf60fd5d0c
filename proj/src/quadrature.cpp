#include "specneumann/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specneumann {

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre P_n and P_n' at x, by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (p0 - x * p1) / (1.0 - x * x);
}

}  // namespace

QuadratureRule gauss_legendre_m11(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n, 1);
  rule.weights.resize(n);
  rule.exactness_degree = 2 * n - 1;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton to 1e-15.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i, 0) = -x;
    rule.weights(i) = w;
    rule.nodes(n - 1 - i, 0) = x;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(half - 1, 0) = 0.0;
  return rule;
}

QuadratureRule gauss_legendre_01(int q) {
  if (q < 0) throw std::invalid_argument("gauss_legendre_01: q must be >= 0");
  QuadratureRule base = gauss_legendre_m11(q + 1);
  QuadratureRule rule;
  rule.nodes = (base.nodes.array() + 1.0) * 0.5;
  rule.weights = base.weights * 0.5;
  rule.exactness_degree = 2 * q + 1;
  return rule;
}

QuadratureRule disk_rule(int q) {
  if (q < 1) throw std::invalid_argument("disk_rule: q must be >= 1");
  const QuadratureRule radial = gauss_legendre_01(q);
  const int n_ang = 2 * q + 1;
  const double wt_ang = 2.0 * kPi / n_ang;

  QuadratureRule rule;
  rule.nodes.resize((q + 1) * n_ang, 2);
  rule.weights.resize((q + 1) * n_ang);
  rule.exactness_degree = 2 * q;
  Eigen::Index idx = 0;
  for (int l = 0; l <= q; ++l) {
    const double r = radial.nodes(l, 0);
    const double w = radial.weights(l) * wt_ang * r;
    for (int m = 0; m < n_ang; ++m) {
      const double th = 2.0 * kPi * m / n_ang;
      rule.nodes(idx, 0) = r * std::cos(th);
      rule.nodes(idx, 1) = r * std::sin(th);
      rule.weights(idx) = w;
      ++idx;
    }
  }
  return rule;
}

QuadratureRule ball_rule(int q) {
  if (q < 1) throw std::invalid_argument("ball_rule: q must be >= 1");
  // Radial integrands carry the r^2 volume factor on top of a degree-2q
  // polynomial part, so q+2 Gauss points (exact through 2q+3) are used.
  const QuadratureRule radial = gauss_legendre_01(q + 1);
  const QuadratureRule polar = gauss_legendre_m11(q + 1);
  const int n_ang = 2 * q + 1;
  const double wt_ang = 2.0 * kPi / n_ang;

  QuadratureRule rule;
  const Eigen::Index total = radial.size() * polar.size() * n_ang;
  rule.nodes.resize(total, 3);
  rule.weights.resize(total);
  rule.exactness_degree = 2 * q;
  Eigen::Index idx = 0;
  for (Eigen::Index l = 0; l < radial.size(); ++l) {
    const double r = radial.nodes(l, 0);
    const double wr = radial.weights(l) * r * r;
    for (Eigen::Index i = 0; i < polar.size(); ++i) {
      const double u = polar.nodes(i, 0);  // cos(theta)
      const double su = std::sqrt(1.0 - u * u);
      const double w = wr * polar.weights(i) * wt_ang;
      for (int m = 0; m < n_ang; ++m) {
        const double phi = 2.0 * kPi * m / n_ang;
        rule.nodes(idx, 0) = r * su * std::cos(phi);
        rule.nodes(idx, 1) = r * su * std::sin(phi);
        rule.nodes(idx, 2) = r * u;
        rule.weights(idx) = w;
        ++idx;
      }
    }
  }
  return rule;
}

QuadratureRule circle_boundary_rule(int q) {
  if (q < 1) throw std::invalid_argument("circle_boundary_rule: q must be >= 1");
  const int n = 2 * q + 1;
  QuadratureRule rule;
  rule.nodes.resize(n, 1);
  rule.weights = Eigen::VectorXd::Constant(n, 2.0 * kPi / n);
  rule.exactness_degree = 2 * q;
  for (int m = 0; m < n; ++m) rule.nodes(m, 0) = 2.0 * kPi * m / n;
  return rule;
}

QuadratureRule sphere_boundary_rule(int q) {
  if (q < 1) throw std::invalid_argument("sphere_boundary_rule: q must be >= 1");
  const QuadratureRule polar = gauss_legendre_m11(q + 1);
  const int n_ang = 2 * q + 1;
  const double wt_ang = 2.0 * kPi / n_ang;

  QuadratureRule rule;
  rule.nodes.resize(polar.size() * n_ang, 2);
  rule.weights.resize(polar.size() * n_ang);
  rule.exactness_degree = 2 * q;
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < polar.size(); ++i) {
    const double theta = std::acos(polar.nodes(i, 0));
    const double w = polar.weights(i) * wt_ang;
    for (int m = 0; m < n_ang; ++m) {
      rule.nodes(idx, 0) = theta;
      rule.nodes(idx, 1) = 2.0 * kPi * m / n_ang;
      rule.weights(idx) = w;
      ++idx;
    }
  }
  return rule;
}

}  // namespace specneumann
