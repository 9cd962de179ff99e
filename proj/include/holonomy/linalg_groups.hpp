#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>

namespace holonomy {

using cplx = std::complex<double>;

/// Default tolerance for orthogonality / unitarity checks.
inline constexpr double kOrthTol = 1e-12;

/// Element of SO(3). Construction through from_matrix() validates the
/// invariants; group products skip the check and rely on periodic
/// re-projection (see reorthonormalized()).
class Rot3 {
public:
  Rot3() : m_(Eigen::Matrix3d::Identity()) {}

  static Rot3 from_matrix(const Eigen::Matrix3d& m, double tol = kOrthTol);
  static Rot3 unchecked(const Eigen::Matrix3d& m) { return Rot3(m); }
  static Rot3 identity() { return Rot3(); }

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Rot3 operator*(const Rot3& o) const { return Rot3(m_ * o.m_); }
  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return m_ * v; }
  Rot3 inverse() const { return Rot3(m_.transpose()); }
  Rot3 pow(long long k) const;

  double orthogonality_error() const;
  Rot3 reorthonormalized() const;

private:
  explicit Rot3(const Eigen::Matrix3d& m) : m_(m) {}
  Eigen::Matrix3d m_;
};

/// Element of SO(4).
class Rot4 {
public:
  Rot4() : m_(Eigen::Matrix4d::Identity()) {}

  static Rot4 from_matrix(const Eigen::Matrix4d& m, double tol = kOrthTol);
  static Rot4 unchecked(const Eigen::Matrix4d& m) { return Rot4(m); }
  static Rot4 identity() { return Rot4(); }

  const Eigen::Matrix4d& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Rot4 operator*(const Rot4& o) const { return Rot4(m_ * o.m_); }
  Eigen::Vector4d operator*(const Eigen::Vector4d& v) const { return m_ * v; }
  Rot4 inverse() const { return Rot4(m_.transpose()); }

  double orthogonality_error() const;
  Rot4 reorthonormalized() const;

private:
  explicit Rot4(const Eigen::Matrix4d& m) : m_(m) {}
  Eigen::Matrix4d m_;
};

/// Element of SU(2) stored as the pair (alpha, beta) of the matrix
/// [[alpha, -conj(beta)], [beta, conj(alpha)]].
class SU2 {
public:
  SU2() : alpha_(1.0, 0.0), beta_(0.0, 0.0) {}

  static SU2 from_pair(cplx alpha, cplx beta, double tol = kOrthTol);
  static SU2 from_matrix(const Eigen::Matrix2cd& m, double tol = kOrthTol);
  static SU2 unchecked(cplx alpha, cplx beta) { return SU2(alpha, beta); }
  static SU2 identity() { return SU2(); }

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  /// (b1, b2, b3, b4) = (Re alpha, Im alpha, Re beta, Im beta).
  Eigen::Vector4d coords() const {
    return {alpha_.real(), alpha_.imag(), beta_.real(), beta_.imag()};
  }
  Eigen::Matrix2cd matrix() const;

  SU2 operator*(const SU2& o) const;
  SU2 operator-() const { return SU2(-alpha_, -beta_); }
  Eigen::Vector2cd operator*(const Eigen::Vector2cd& v) const { return matrix() * v; }
  SU2 inverse() const { return SU2(std::conj(alpha_), -beta_); }

  double orthogonality_error() const;
  SU2 reorthonormalized() const;

private:
  SU2(cplx a, cplx b) : alpha_(a), beta_(b) {}
  cplx alpha_;
  cplx beta_;
};

/// Element of U(2).
class U2Mat {
public:
  U2Mat() : m_(Eigen::Matrix2cd::Identity()) {}

  static U2Mat from_matrix(const Eigen::Matrix2cd& m, double tol = kOrthTol);
  static U2Mat unchecked(const Eigen::Matrix2cd& m) { return U2Mat(m); }
  static U2Mat from_su2(const SU2& u) { return U2Mat(u.matrix()); }
  static U2Mat identity() { return U2Mat(); }

  const Eigen::Matrix2cd& matrix() const { return m_; }

  U2Mat operator*(const U2Mat& o) const { return U2Mat(m_ * o.m_); }
  Eigen::Vector2cd operator*(const Eigen::Vector2cd& v) const { return m_ * v; }
  U2Mat inverse() const { return U2Mat(m_.adjoint()); }

  double orthogonality_error() const;
  U2Mat reorthonormalized() const;

private:
  explicit U2Mat(const Eigen::Matrix2cd& m) : m_(m) {}
  Eigen::Matrix2cd m_;
};

struct AxisAngle {
  Eigen::Vector3d axis;  ///< unit vector
  double theta = 0.0;    ///< radians in [0, 2*pi)
};

// Lie algebra basis of so(3); J_k is the hat map of the k-th unit vector.
Eigen::Matrix3d hat(const Eigen::Vector3d& v);
Eigen::Matrix3d J(int k);

/// Rotation fixing e1 and turning the (e2, e3) plane by theta.
Rot3 c_theta(double theta);

/// exp(phi * (-sin(gamma) J2 + cos(gamma) J3)); its first column makes the
/// angle phi with e1.
Rot3 v_phi_gamma(double phi, double gamma);

/// exp(c1 J1 + c2 J2 + c3 J3) via the Rodrigues formula.
Rot3 exp_so3(const Eigen::Vector3d& coeffs);

/// Rotation angle in [0, pi].
double rotation_angle(const Rot3& r);

/// Fixed axis and angle of a non-identity rotation.
///
/// The axis is oriented so that its first nonzero coordinate (beyond 1e-12)
/// is positive; theta in [0, 2*pi) is then determined. At theta = pi the
/// axis comes from the largest column of (r + I) / 2.
///
/// Throws Error(IdentityInput) when ||r - I||_F <= tol.
AxisAngle axis_angle_of(const Rot3& r, double tol = 1e-10);

/// Relative rotation angle arccos((tr(a^T b) - 1) / 2).
double so3_distance(const Rot3& a, const Rot3& b);

SU2 b_theta(double theta);

/// SU(2) -> SO(3) double cover in the (b1, b2, b3, b4) coordinates.
Rot3 phi_cover(const SU2& u);

/// u * b * u^dagger
SU2 conj_su2(const SU2& u, const SU2& b);

/// SU(2) element whose first column (alpha, beta) satisfies
/// |alpha|^2 - |beta|^2 = cos(phi) and whose cover maps e1 to the first
/// column of v_phi_gamma(phi, gamma).
SU2 su2_from_phi_gamma(double phi, double gamma);

/// One preimage of r under phi_cover (the one with Re alpha >= 0).
SU2 su2_lift(const Rot3& r);

/// Unit quaternion (w, x, y, z) with the standard rotation q v q^-1 equal to r.
Eigen::Vector4d quaternion_of(const Rot3& r);
Rot3 rotation_of_quaternion(const Eigen::Vector4d& q);

/// Induced action of a on the self-dual / anti-self-dual bivectors,
/// expressed in the orthonormal bases (e1^e2 +- e3^e4, e1^e3 +- e4^e2,
/// e1^e4 +- e2^e3) / sqrt(2).
std::pair<Rot3, Rot3> so4_to_so3_pair(const Rot4& a);

/// Full 6x6 matrix of the induced action on Lambda^2 R^4 in the basis
/// (e12, e13, e14, e23, e24, e34).
Eigen::Matrix<double, 6, 6> lambda2_matrix(const Eigen::Matrix4d& a);

/// The 6x6 orthogonal change of basis whose columns are
/// Omega_{+,1..3}, Omega_{-,1..3} in the (e12, ..., e34) coordinates.
Eigen::Matrix<double, 6, 6> omega_basis();

/// Preimage of (cp, cm) under so4_to_so3_pair. Of the two preimages +-A the
/// one with positive trace is returned; on a zero trace, the one whose first
/// nonzero entry in row-major order is positive.
Rot4 lift_so3_pair(const Rot3& cp, const Rot3& cm);

/// ||a - b||_F / sqrt(n) for n x n orthogonal / unitary matrices.
double frobenius_distance(const Rot4& a, const Rot4& b);
double frobenius_distance(const SU2& a, const SU2& b);
double frobenius_distance(const U2Mat& a, const U2Mat& b);

}  // namespace holonomy
