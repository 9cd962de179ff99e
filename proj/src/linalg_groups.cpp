#include "holonomy/linalg_groups.hpp"

#include "holonomy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace holonomy {

namespace {

template <class Mat>
Mat nearest_orthogonal(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU();
  Mat r = u * svd.matrixV().transpose();
  if (r.determinant() < 0) {
    u.col(u.cols() - 1) *= -1.0;
    r = u * svd.matrixV().transpose();
  }
  return r;
}

template <class Mat>
double orth_error(const Mat& m) {
  const double gram = (m.transpose() * m - Mat::Identity()).norm();
  return std::max(gram, std::abs(m.determinant() - 1.0));
}

Eigen::Vector3d vee(const Eigen::Matrix3d& s) { return {s(2, 1), s(0, 2), s(1, 0)}; }

Eigen::Matrix4d left_mult(const Eigen::Vector4d& p) {
  const double w = p[0], a = p[1], b = p[2], c = p[3];
  Eigen::Matrix4d l;
  l << w, -a, -b, -c,
       a, w, -c, b,
       b, c, w, -a,
       c, -b, a, w;
  return l;
}

Eigen::Matrix4d right_mult(const Eigen::Vector4d& q) {
  const double w = q[0], a = q[1], b = q[2], c = q[3];
  Eigen::Matrix4d r;
  r << w, -a, -b, -c,
       a, w, c, -b,
       b, -c, w, a,
       c, b, -a, w;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Rot3

Rot3 Rot3::from_matrix(const Eigen::Matrix3d& m, double tol) {
  if (!m.allFinite() || orth_error(m) > tol) {
    throw Error(Errc::InvariantViolation, "matrix is not in SO(3) within tolerance");
  }
  return Rot3(m);
}

Rot3 Rot3::pow(long long k) const {
  Rot3 base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Rot3 acc;
  while (e != 0) {
    if (e & 1ULL) acc = acc * base;
    base = base * base;
    e >>= 1U;
  }
  return acc;
}

double Rot3::orthogonality_error() const { return orth_error(m_); }
Rot3 Rot3::reorthonormalized() const { return Rot3(nearest_orthogonal(m_)); }

// ---------------------------------------------------------------- Rot4

Rot4 Rot4::from_matrix(const Eigen::Matrix4d& m, double tol) {
  if (!m.allFinite() || orth_error(m) > tol) {
    throw Error(Errc::InvariantViolation, "matrix is not in SO(4) within tolerance");
  }
  return Rot4(m);
}

double Rot4::orthogonality_error() const { return orth_error(m_); }
Rot4 Rot4::reorthonormalized() const { return Rot4(nearest_orthogonal(m_)); }

// ---------------------------------------------------------------- SU2

SU2 SU2::from_pair(cplx alpha, cplx beta, double tol) {
  const double n = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw Error(Errc::InvariantViolation, "|alpha|^2 + |beta|^2 != 1");
  }
  return SU2(alpha, beta);
}

SU2 SU2::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  const double shape = std::abs(m(0, 1) + std::conj(m(1, 0))) + std::abs(m(1, 1) - std::conj(m(0, 0)));
  if (shape > tol) {
    throw Error(Errc::InvariantViolation, "matrix does not have the SU(2) shape");
  }
  return from_pair(m(0, 0), m(1, 0), tol);
}

Eigen::Matrix2cd SU2::matrix() const {
  Eigen::Matrix2cd m;
  m << alpha_, -std::conj(beta_), beta_, std::conj(alpha_);
  return m;
}

SU2 SU2::operator*(const SU2& o) const {
  return SU2(alpha_ * o.alpha_ - std::conj(beta_) * o.beta_,
             beta_ * o.alpha_ + std::conj(alpha_) * o.beta_);
}

double SU2::orthogonality_error() const {
  return std::abs(std::norm(alpha_) + std::norm(beta_) - 1.0);
}

SU2 SU2::reorthonormalized() const {
  const double n = std::sqrt(std::norm(alpha_) + std::norm(beta_));
  return SU2(alpha_ / n, beta_ / n);
}

// ---------------------------------------------------------------- U2Mat

U2Mat U2Mat::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  if (!m.allFinite()) throw Error(Errc::InvariantViolation, "non-finite U(2) entry");
  const double gram = (m.adjoint() * m - Eigen::Matrix2cd::Identity()).norm();
  if (gram > tol || std::abs(std::abs(m.determinant()) - 1.0) > tol) {
    throw Error(Errc::InvariantViolation, "matrix is not in U(2) within tolerance");
  }
  return U2Mat(m);
}

double U2Mat::orthogonality_error() const {
  return (m_.adjoint() * m_ - Eigen::Matrix2cd::Identity()).norm();
}

U2Mat U2Mat::reorthonormalized() const {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m_, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return U2Mat(svd.matrixU() * svd.matrixV().adjoint());
}

// ---------------------------------------------------------------- so(3)

Eigen::Matrix3d hat(const Eigen::Vector3d& v) {
  Eigen::Matrix3d h;
  h << 0.0, -v[2], v[1],
       v[2], 0.0, -v[0],
       -v[1], v[0], 0.0;
  return h;
}

Eigen::Matrix3d J(int k) { return hat(Eigen::Vector3d::Unit(k - 1)); }

Rot3 c_theta(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix3d m;
  m << 1.0, 0.0, 0.0,
       0.0, c, -s,
       0.0, s, c;
  return Rot3::unchecked(m);
}

Rot3 v_phi_gamma(double phi, double gamma) {
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  Eigen::Matrix3d m;
  m << cp, -sp * cg, -sp * sg,
       sp * cg, sg * sg + cp * cg * cg, (cp - 1.0) * cg * sg,
       sp * sg, (cp - 1.0) * cg * sg, cg * cg + cp * sg * sg;
  return Rot3::unchecked(m);
}

Rot3 exp_so3(const Eigen::Vector3d& coeffs) {
  const double t = coeffs.norm();
  const Eigen::Matrix3d k = hat(coeffs);
  double a, b;  // sin(t)/t, (1 - cos t)/t^2
  if (t < 1e-6) {
    const double t2 = t * t;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(t) / t;
    b = (1.0 - std::cos(t)) / (t * t);
  }
  return Rot3::unchecked(Eigen::Matrix3d::Identity() + a * k + b * k * k);
}

double rotation_angle(const Rot3& r) {
  const Eigen::Matrix3d& m = r.matrix();
  const double s = 0.5 * vee(m - m.transpose()).norm();
  const double c = 0.5 * (m.trace() - 1.0);
  return std::atan2(s, c);
}

AxisAngle axis_angle_of(const Rot3& r, double tol) {
  const Eigen::Matrix3d& m = r.matrix();
  if ((m - Eigen::Matrix3d::Identity()).norm() <= tol) {
    throw Error(Errc::IdentityInput, "rotation axis of the identity is undefined");
  }
  constexpr double pi = std::numbers::pi;
  const Eigen::Vector3d w = 0.5 * vee(m - m.transpose());  // sin(theta) * axis
  const double theta0 = rotation_angle(r);

  Eigen::Vector3d axis;
  double theta = theta0;
  if (theta0 > pi - 1e-6) {
    const Eigen::Matrix3d sym = 0.5 * (m + Eigen::Matrix3d::Identity());
    int best = 0;
    for (int j = 1; j < 3; ++j) {
      if (sym.col(j).norm() > sym.col(best).norm()) best = j;
    }
    axis = sym.col(best).normalized();
    if (w.norm() > 1e-14 && axis.dot(w) < 0.0) axis = -axis;
  } else {
    axis = w / std::sin(theta0);
    axis.normalize();
  }

  for (int i = 0; i < 3; ++i) {
    if (std::abs(axis[i]) > 1e-12) {
      if (axis[i] < 0.0) {
        axis = -axis;
        theta = 2.0 * pi - theta;
      }
      break;
    }
  }
  if (theta >= 2.0 * pi) theta -= 2.0 * pi;
  return {axis, theta};
}

double so3_distance(const Rot3& a, const Rot3& b) {
  return rotation_angle(a.inverse() * b);
}

// ---------------------------------------------------------------- SU(2)

SU2 b_theta(double theta) {
  return SU2::unchecked(std::polar(1.0, -theta / 2.0), cplx(0.0, 0.0));
}

Rot3 phi_cover(const SU2& u) {
  const Eigen::Vector4d b = u.coords();
  const double b1 = b[0], b2 = b[1], b3 = b[2], b4 = b[3];
  Eigen::Matrix3d m;
  m << b1 * b1 + b2 * b2 - b3 * b3 - b4 * b4, 2 * b1 * b4 + 2 * b2 * b3, -2 * b1 * b3 + 2 * b2 * b4,
       -2 * b1 * b4 + 2 * b2 * b3, b1 * b1 + b3 * b3 - b2 * b2 - b4 * b4, 2 * b1 * b2 + 2 * b3 * b4,
       2 * b1 * b3 + 2 * b2 * b4, -2 * b1 * b2 + 2 * b3 * b4, b1 * b1 + b4 * b4 - b2 * b2 - b3 * b3;
  return Rot3::unchecked(m);
}

SU2 conj_su2(const SU2& u, const SU2& b) { return u * b * u.inverse(); }

SU2 su2_from_phi_gamma(double phi, double gamma) {
  const double s = std::sin(phi / 2.0);
  return SU2::unchecked(cplx(std::cos(phi / 2.0), 0.0), cplx(s * std::sin(gamma), -s * std::cos(gamma)));
}

Eigen::Vector4d quaternion_of(const Rot3& r) {
  const Eigen::Matrix3d& m = r.matrix();
  const double tr = m.trace();
  Eigen::Vector4d q;
  if (tr >= m(0, 0) && tr >= m(1, 1) && tr >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q << 0.25 * s, (m(2, 1) - m(1, 2)) / s, (m(0, 2) - m(2, 0)) / s, (m(1, 0) - m(0, 1)) / s;
  } else if (m(0, 0) >= m(1, 1) && m(0, 0) >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2));
    q << (m(2, 1) - m(1, 2)) / s, 0.25 * s, (m(0, 1) + m(1, 0)) / s, (m(0, 2) + m(2, 0)) / s;
  } else if (m(1, 1) >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 - m(0, 0) + m(1, 1) - m(2, 2));
    q << (m(0, 2) - m(2, 0)) / s, (m(0, 1) + m(1, 0)) / s, 0.25 * s, (m(1, 2) + m(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 - m(0, 0) - m(1, 1) + m(2, 2));
    q << (m(1, 0) - m(0, 1)) / s, (m(0, 2) + m(2, 0)) / s, (m(1, 2) + m(2, 1)) / s, 0.25 * s;
  }
  q.normalize();
  if (q[0] < 0.0) q = -q;
  return q;
}

Rot3 rotation_of_quaternion(const Eigen::Vector4d& q) {
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Eigen::Matrix3d m;
  m << w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z;
  return Rot3::unchecked(m);
}

SU2 su2_lift(const Rot3& r) {
  // phi_cover(b) is the standard rotation of the conjugate quaternion of b.
  const Eigen::Vector4d q = quaternion_of(r);
  return SU2::unchecked(cplx(q[0], -q[1]), cplx(-q[2], -q[3]));
}

// ---------------------------------------------------------------- SO(4)

Eigen::Matrix<double, 6, 6> lambda2_matrix(const Eigen::Matrix4d& a) {
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Eigen::Matrix<double, 6, 6> out;
  for (int col = 0; col < 6; ++col) {
    const int i = kPairs[col][0], j = kPairs[col][1];
    for (int row = 0; row < 6; ++row) {
      const int k = kPairs[row][0], l = kPairs[row][1];
      out(row, col) = a(k, i) * a(l, j) - a(l, i) * a(k, j);
    }
  }
  return out;
}

Eigen::Matrix<double, 6, 6> omega_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  // rows: e12 e13 e14 e23 e24 e34
  Eigen::Matrix<double, 6, 6> b;
  b <<  h,  0,  0,  h,  0,  0,
        0,  h,  0,  0,  h,  0,
        0,  0,  h,  0,  0,  h,
        0,  0,  h,  0,  0, -h,
        0, -h,  0,  0,  h,  0,
        h,  0,  0, -h,  0,  0;
  return b;
}

std::pair<Rot3, Rot3> so4_to_so3_pair(const Rot4& a) {
  const Eigen::Matrix<double, 6, 6> b = omega_basis();
  const Eigen::Matrix<double, 6, 6> block = b.transpose() * lambda2_matrix(a.matrix()) * b;
  return {Rot3::unchecked(block.topLeftCorner<3, 3>()), Rot3::unchecked(block.bottomRightCorner<3, 3>())};
}

Rot4 lift_so3_pair(const Rot3& cp, const Rot3& cm) {
  // x -> p x conj(q) acts on the self-dual part through R(p) and on the
  // anti-self-dual part through R(q).
  const Eigen::Vector4d p = quaternion_of(cp);
  Eigen::Vector4d qc = quaternion_of(cm);
  qc.tail<3>() *= -1.0;
  Eigen::Matrix4d a = left_mult(p) * right_mult(qc);
  const double tr = a.trace();
  bool flip = tr < -1e-14;
  if (std::abs(tr) <= 1e-14) {
    for (int i = 0; i < 16; ++i) {
      const double v = a(i / 4, i % 4);
      if (std::abs(v) > 1e-14) {
        flip = v < 0.0;
        break;
      }
    }
  }
  if (flip) a = -a;
  return Rot4::unchecked(a);
}

// ---------------------------------------------------------------- metrics

double frobenius_distance(const Rot4& a, const Rot4& b) {
  return (a.matrix() - b.matrix()).norm() / 2.0;
}

double frobenius_distance(const SU2& a, const SU2& b) {
  return (a.matrix() - b.matrix()).norm() / std::sqrt(2.0);
}

double frobenius_distance(const U2Mat& a, const U2Mat& b) {
  return (a.matrix() - b.matrix()).norm() / std::sqrt(2.0);
}

}  // namespace holonomy
