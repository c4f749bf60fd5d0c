#include "specneumann/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specneumann {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);

// Normalized Jacobi chain: fills values[0..jmax] and derivs[0..jmax] with
// the unit-norm P_j^{(0,b)} and derivatives at t. The recurrence is run on
// the classical polynomials and the scale sqrt((2j+b+1)/2^{b+1}) applied at
// the end; for alpha = 0 the squared norm is 2^{b+1}/(2j+b+1).
void jacobi_chain(int jmax, double b, double t, double* values, double* derivs) {
  double p0 = 1.0, d0 = 0.0;
  values[0] = p0;
  derivs[0] = d0;
  if (jmax >= 1) {
    double p1 = 0.5 * ((b + 2.0) * t - b);
    double d1 = 0.5 * (b + 2.0);
    values[1] = p1;
    derivs[1] = d1;
    for (int j = 2; j <= jmax; ++j) {
      const double s = 2.0 * j + b;
      const double denom = 2.0 * j * (j + b) * (s - 2.0);
      const double c1 = (s - 1.0) * s * (s - 2.0);
      const double c2 = (s - 1.0) * b * b;
      const double c3 = 2.0 * (j - 1.0) * (j + b - 1.0) * s;
      const double pj = ((c1 * t - c2) * p1 - c3 * p0) / denom;
      const double dj = (c1 * p1 + (c1 * t - c2) * d1 - c3 * d0) / denom;
      p0 = p1;
      d0 = d1;
      p1 = pj;
      d1 = dj;
      values[j] = pj;
      derivs[j] = dj;
    }
  }
  for (int j = 0; j <= jmax; ++j) {
    const double scale = std::sqrt((2.0 * j + b + 1.0) / std::exp2(b + 1.0));
    values[j] *= scale;
    derivs[j] *= scale;
  }
}

int ball_block_offset(const BasisIndex3D& idx) {
  const int m = idx.degree_m, j = idx.radial_j;
  return j * (2 * m + 1) - 2 * j * (j - 1) + idx.harmonic_beta;
}

void check_ball_index(const BasisIndex3D& idx) {
  if (idx.degree_m < 0 || idx.radial_j < 0 || idx.radial_j > idx.degree_m / 2 ||
      idx.harmonic_beta < 0 ||
      idx.harmonic_beta > 2 * (idx.degree_m - 2 * idx.radial_j))
    throw std::invalid_argument("ball basis index out of range");
}

double cmj_constant(int m, int j) { return std::exp2(1.25 + 0.5 * m - j); }

}  // namespace

int dim_pi(int d, int n) {
  if (n < 0) throw std::invalid_argument("dim_pi: degree must be >= 0");
  if (d == 2) return (n + 1) * (n + 2) / 2;
  if (d == 3) return (n + 1) * (n + 2) * (n + 3) / 6;
  throw std::invalid_argument("dim_pi: dimension must be 2 or 3");
}

ValueDeriv chebyshev_u(int n, double t) {
  if (n < 0) throw std::invalid_argument("chebyshev_u: degree must be >= 0");
  double u0 = 1.0, d0 = 0.0;
  if (n == 0) return {u0, d0};
  double u1 = 2.0 * t, d1 = 2.0;
  for (int k = 2; k <= n; ++k) {
    const double uk = 2.0 * t * u1 - u0;
    const double dk = 2.0 * u1 + 2.0 * t * d1 - d0;
    u0 = u1;
    d0 = d1;
    u1 = uk;
    d1 = dk;
  }
  return {u1, d1};
}

ValueDeriv jacobi_p(int j, double b, double t) {
  if (j < 0) throw std::invalid_argument("jacobi_p: index must be >= 0");
  std::vector<double> vals(j + 1), ders(j + 1);
  jacobi_chain(j, b, t, vals.data(), ders.data());
  return {vals[j], ders[j]};
}

int linear_index(const BasisIndex2D& idx) {
  if (idx.degree_n < 0 || idx.angle_k < 0 || idx.angle_k > idx.degree_n)
    throw std::invalid_argument("disk basis index out of range");
  return idx.degree_n * (idx.degree_n + 1) / 2 + idx.angle_k;
}

BasisIndex2D basis_index_2d(int ell) {
  if (ell < 0) throw std::invalid_argument("basis_index_2d: negative index");
  int n = 0;
  while ((n + 1) * (n + 2) / 2 <= ell) ++n;
  return {n, ell - n * (n + 1) / 2};
}

int linear_index(const BasisIndex3D& idx) {
  check_ball_index(idx);
  const int m = idx.degree_m;
  return (m > 0 ? dim_pi(3, m - 1) : 0) + ball_block_offset(idx);
}

BasisIndex3D basis_index_3d(int ell) {
  if (ell < 0) throw std::invalid_argument("basis_index_3d: negative index");
  int m = 0;
  while (dim_pi(3, m) <= ell) ++m;
  int rem = ell - (m > 0 ? dim_pi(3, m - 1) : 0);
  int j = 0;
  while (rem >= 2 * (m - 2 * j) + 1) {
    rem -= 2 * (m - 2 * j) + 1;
    ++j;
  }
  return {m, j, rem};
}

Eval2D ridge_eval(const BasisIndex2D& idx, double x, double y) {
  const int n = idx.degree_n, k = idx.angle_k;
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("ridge_eval: index out of range");
  const double h = kPi / (n + 1);
  const double c = std::cos(k * h), s = std::sin(k * h);
  const ValueDeriv u = chebyshev_u(n, x * c + y * s);
  Eval2D out;
  out.value = kInvSqrtPi * u.value;
  out.gradient << kInvSqrtPi * u.deriv * c, kInvSqrtPi * u.deriv * s;
  return out;
}

SolidHarmonics::SolidHarmonics(int max_degree) : max_degree_(max_degree) {
  norm_.resize((max_degree + 1) * (max_degree + 2) / 2);
  for (int l = 0; l <= max_degree; ++l) {
    norm_[l * (l + 1) / 2] = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
    double ratio = 1.0;  // (l-m)! / (l+m)!
    for (int m = 1; m <= l; ++m) {
      ratio /= static_cast<double>(l - m + 1) * (l + m);
      norm_[l * (l + 1) / 2 + m] = std::sqrt((2.0 * l + 1.0) / (2.0 * kPi) * ratio);
    }
  }
}

void SolidHarmonics::eval(const Eigen::Vector3d& x, Eigen::VectorXd& values,
                          Eigen::MatrixXd& gradients) const {
  const int L = max_degree_;
  values.resize(count());
  gradients.resize(count(), 3);
  const double r2 = x.squaredNorm();
  const double z = x.z();

  // Sectoral pieces A_m + i B_m = (x + i y)^m.
  std::vector<double> A(L + 1), B(L + 1);
  A[0] = 1.0;
  B[0] = 0.0;
  for (int m = 1; m <= L; ++m) {
    A[m] = x.x() * A[m - 1] - x.y() * B[m - 1];
    B[m] = x.x() * B[m - 1] + x.y() * A[m - 1];
  }

  for (int m = 0; m <= L; ++m) {
    // Zonal-in-z factors Pi_l^m(z, r^2) with partials wrt r^2 (D) and z (E).
    double pi2 = 0.0, d2 = 0.0, e2 = 0.0;  // l-2 terms
    double pi1 = 0.0, d1 = 0.0, e1 = 0.0;  // l-1 terms
    for (int l = m; l <= L; ++l) {
      double pi, d, e;
      if (l == m) {
        pi = 1.0;
        for (int k = 1; k <= m; ++k) pi *= 2.0 * k - 1.0;  // (2m-1)!!
        d = 0.0;
        e = 0.0;
      } else if (l == m + 1) {
        pi = (2.0 * m + 1.0) * z * pi1;
        d = 0.0;
        e = (2.0 * m + 1.0) * pi1;
      } else {
        const double inv = 1.0 / (l - m);
        const double a = 2.0 * l - 1.0, c = l + m - 1.0;
        pi = inv * (a * z * pi1 - c * r2 * pi2);
        d = inv * (a * z * d1 - c * (pi2 + r2 * d2));
        e = inv * (a * (pi1 + z * e1) - c * r2 * e2);
      }
      const double nrm = norm_[l * (l + 1) / 2 + m];
      const double gx = 2.0 * x.x() * d, gy = 2.0 * x.y() * d, gz = 2.0 * z * d + e;
      if (m == 0) {
        const int at = l * l;
        values(at) = nrm * pi;
        gradients.row(at) << nrm * gx, nrm * gy, nrm * gz;
      } else {
        const int at_c = l * l + 2 * m - 1;
        const int at_s = l * l + 2 * m;
        values(at_c) = nrm * pi * A[m];
        values(at_s) = nrm * pi * B[m];
        gradients.row(at_c) << nrm * (gx * A[m] + pi * m * A[m - 1]),
            nrm * (gy * A[m] - pi * m * B[m - 1]), nrm * gz * A[m];
        gradients.row(at_s) << nrm * (gx * B[m] + pi * m * B[m - 1]),
            nrm * (gy * B[m] + pi * m * A[m - 1]), nrm * gz * B[m];
      }
      pi2 = pi1;
      d2 = d1;
      e2 = e1;
      pi1 = pi;
      d1 = d;
      e1 = e;
    }
  }
}

Eval3D spherical_harmonic(int beta, int l, const Eigen::Vector3d& direction) {
  if (l < 0 || beta < 0 || beta > 2 * l)
    throw std::invalid_argument("spherical_harmonic: index out of range");
  SolidHarmonics solids(l);
  Eigen::VectorXd vals;
  Eigen::MatrixXd grads;
  solids.eval(direction, vals, grads);
  Eval3D out;
  out.value = vals(l * l + beta);
  // Tangential part of the solid-harmonic gradient on |x| = 1.
  const Eigen::Vector3d g = grads.row(l * l + beta);
  out.gradient = g - static_cast<double>(l) * out.value * direction;
  return out;
}

Eval3D ball_basis_eval(const BasisIndex3D& idx, const Eigen::Vector3d& x) {
  check_ball_index(idx);
  const int l = idx.degree_m - 2 * idx.radial_j;
  const double b = l + 0.5;
  const double t = 2.0 * x.squaredNorm() - 1.0;
  const ValueDeriv p = jacobi_p(idx.radial_j, b, t);
  SolidHarmonics solids(l);
  Eigen::VectorXd vals;
  Eigen::MatrixXd grads;
  solids.eval(x, vals, grads);
  const double y = vals(l * l + idx.harmonic_beta);
  const Eigen::Vector3d gy = grads.row(l * l + idx.harmonic_beta);
  const double c = cmj_constant(idx.degree_m, idx.radial_j);
  Eval3D out;
  out.value = c * p.value * y;
  out.gradient = c * (4.0 * p.deriv * y * x + p.value * gy);
  return out;
}

BasisSet::BasisSet(int dim, int degree) : dim_(dim), degree_(degree), size_(dim_pi(dim, degree)) {}

BasisSet BasisSet::disk(int degree) {
  BasisSet set(2, degree);
  set.cos_ang_.resize(set.size_);
  set.sin_ang_.resize(set.size_);
  set.ridge_deg_.resize(set.size_);
  for (int ell = 0; ell < set.size_; ++ell) {
    const BasisIndex2D idx = basis_index_2d(ell);
    const double ang = idx.angle_k * kPi / (idx.degree_n + 1);
    set.cos_ang_[ell] = std::cos(ang);
    set.sin_ang_[ell] = std::sin(ang);
    set.ridge_deg_[ell] = idx.degree_n;
  }
  return set;
}

BasisSet BasisSet::ball(int degree) {
  BasisSet set(3, degree);
  set.ball_idx_.resize(set.size_);
  set.ball_cmj_.resize(set.size_);
  for (int ell = 0; ell < set.size_; ++ell) {
    const BasisIndex3D idx = basis_index_3d(ell);
    set.ball_idx_[ell] = idx;
    set.ball_cmj_[ell] = cmj_constant(idx.degree_m, idx.radial_j);
  }
  set.solids_ = SolidHarmonics(degree);
  return set;
}

void BasisSet::eval_all(const Eigen::VectorXd& x, Eigen::VectorXd& values,
                        Eigen::MatrixXd& gradients) const {
  values.resize(size_);
  gradients.resize(size_, dim_);
  if (dim_ == 2) {
    for (int ell = 0; ell < size_; ++ell) {
      const double t = x(0) * cos_ang_[ell] + x(1) * sin_ang_[ell];
      const ValueDeriv u = chebyshev_u(ridge_deg_[ell], t);
      values(ell) = kInvSqrtPi * u.value;
      gradients(ell, 0) = kInvSqrtPi * u.deriv * cos_ang_[ell];
      gradients(ell, 1) = kInvSqrtPi * u.deriv * sin_ang_[ell];
    }
    return;
  }

  const Eigen::Vector3d p = x.head<3>();
  Eigen::VectorXd sh_vals;
  Eigen::MatrixXd sh_grads;
  solids_.eval(p, sh_vals, sh_grads);

  // Jacobi chains per harmonic order l at t = 2|x|^2 - 1.
  const double t = 2.0 * p.squaredNorm() - 1.0;
  const int n = degree_;
  std::vector<std::vector<double>> pv(n + 1), pd(n + 1);
  for (int l = 0; l <= n; ++l) {
    const int jmax = (n - l) / 2;
    pv[l].resize(jmax + 1);
    pd[l].resize(jmax + 1);
    jacobi_chain(jmax, l + 0.5, t, pv[l].data(), pd[l].data());
  }

  for (int ell = 0; ell < size_; ++ell) {
    const BasisIndex3D& idx = ball_idx_[ell];
    const int l = idx.degree_m - 2 * idx.radial_j;
    const double c = ball_cmj_[ell];
    const double pj = pv[l][idx.radial_j], dj = pd[l][idx.radial_j];
    const int at = l * l + idx.harmonic_beta;
    const double y = sh_vals(at);
    values(ell) = c * pj * y;
    gradients.row(ell) =
        c * (4.0 * dj * y * p.transpose() + pj * sh_grads.row(at));
  }
}

void BasisSet::eval_values(const Eigen::VectorXd& x, Eigen::VectorXd& values) const {
  Eigen::MatrixXd grads;
  eval_all(x, values, grads);
}

double BasisSet::eval_member(int ell, const Eigen::VectorXd& x,
                             Eigen::VectorXd* gradient) const {
  if (ell < 0 || ell >= size_) throw std::invalid_argument("basis member out of range");
  if (dim_ == 2) {
    const Eval2D e = ridge_eval(basis_index_2d(ell), x(0), x(1));
    if (gradient) *gradient = e.gradient;
    return e.value;
  }
  const Eval3D e = ball_basis_eval(ball_idx_[ell], x.head<3>());
  if (gradient) *gradient = e.gradient;
  return e.value;
}

}  // namespace specneumann
