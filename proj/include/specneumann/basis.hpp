#pragma once

#include <Eigen/Core>

#include <vector>

namespace specneumann {

/// Dimension of the space of d-variate polynomials of total degree <= n:
/// (n+1)(n+2)/2 for d=2, binomial(n+3,3) for d=3.
int dim_pi(int d, int n);

struct ValueDeriv {
  double value = 0.0;
  double deriv = 0.0;
};

/// Chebyshev polynomial of the second kind U_n(t) and its derivative,
/// both by the triple recursion. Arguments slightly outside [-1,1] are
/// fine; the recursion does not care.
ValueDeriv chebyshev_u(int n, double t);

/// Jacobi polynomial P_j^{(0,b)}(t) scaled to unit L^2 norm on [-1,1]
/// with weight (1+t)^b, together with its derivative. Evaluated by the
/// three-term recurrence; the derivative by differentiating it.
ValueDeriv jacobi_p(int j, double b, double t);

/// Index of a disk basis member: the ridge polynomial of degree n with
/// angle k*pi/(n+1), k in [0, n].
struct BasisIndex2D {
  int degree_n = 0;
  int angle_k = 0;
};

/// Index of a ball basis member: total degree m, radial index j in
/// [0, floor(m/2)], spherical-harmonic index beta in [0, 2(m-2j)].
struct BasisIndex3D {
  int degree_m = 0;
  int radial_j = 0;
  int harmonic_beta = 0;
};

/// Lexicographic (degree-major) linear positions, 0-based.
int linear_index(const BasisIndex2D& idx);
int linear_index(const BasisIndex3D& idx);
BasisIndex2D basis_index_2d(int ell);
BasisIndex3D basis_index_3d(int ell);

struct Eval2D {
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
};

struct Eval3D {
  double value = 0.0;
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
};

/// Ridge polynomial (1/sqrt(pi)) U_n(x cos(kh) + y sin(kh)), h = pi/(n+1),
/// with its Cartesian gradient.
Eval2D ridge_eval(const BasisIndex2D& idx, double x, double y);

/// Real spherical harmonic S_{beta,l} at a unit direction, with the
/// tangential (surface) gradient. beta = 0 is the zonal term; beta = 2m-1
/// and beta = 2m are the cos(m phi) and sin(m phi) terms for m = 1..l.
Eval3D spherical_harmonic(int beta, int l, const Eigen::Vector3d& direction);

/// Ball basis member c_{m,j} p_j^{(0,m-2j+1/2)}(2|x|^2-1) S_{beta,m-2j}(x)
/// with c_{m,j} = 2^{5/4+m/2-j}, evaluated through the solid-harmonic
/// form, which is a polynomial and therefore smooth at x = 0.
Eval3D ball_basis_eval(const BasisIndex3D& idx, const Eigen::Vector3d& x);

/// Evaluates real solid harmonics r^l S_{beta,l} and their Cartesian
/// gradients for all l <= max_degree at one point. Layout: member (l,
/// beta) lives at position l*l + beta.
class SolidHarmonics {
 public:
  explicit SolidHarmonics(int max_degree);

  int max_degree() const { return max_degree_; }
  int count() const { return (max_degree_ + 1) * (max_degree_ + 1); }

  /// values: count() entries; gradients: count() x 3.
  void eval(const Eigen::Vector3d& x, Eigen::VectorXd& values,
            Eigen::MatrixXd& gradients) const;

 private:
  int max_degree_;
  std::vector<double> norm_;  // per (l, m)
};

/// The orthonormal polynomial basis of Pi_n on the unit disk or unit
/// ball. Immutable after construction; evaluations are pure and safe to
/// call concurrently.
class BasisSet {
 public:
  static BasisSet disk(int degree);
  static BasisSet ball(int degree);

  int dimension() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return size_; }

  /// Value and gradient of one member at a point given as a d-vector.
  double eval_member(int ell, const Eigen::VectorXd& x,
                     Eigen::VectorXd* gradient = nullptr) const;

  /// Values (size N) and gradients (N x d) of every member at x.
  void eval_all(const Eigen::VectorXd& x, Eigen::VectorXd& values,
                Eigen::MatrixXd& gradients) const;

  /// Values only, for boundary terms and plain function expansion.
  void eval_values(const Eigen::VectorXd& x, Eigen::VectorXd& values) const;

 private:
  BasisSet(int dim, int degree);

  int dim_;
  int degree_;
  int size_;
  // Disk: precomputed ridge directions per member.
  std::vector<double> cos_ang_, sin_ang_;
  std::vector<int> ridge_deg_;
  // Ball: shared solid-harmonic evaluator and per-(m,j) constants.
  std::vector<BasisIndex3D> ball_idx_;
  std::vector<double> ball_cmj_;
  SolidHarmonics solids_{0};
};

}  // namespace specneumann
