#include "holonomy/errors.hpp"
#include "holonomy/linalg_groups.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace holonomy;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix3d series_exp(const Eigen::Matrix3d& x) {
  Eigen::Matrix3d sum = Eigen::Matrix3d::Identity(), term = Eigen::Matrix3d::Identity();
  for (int k = 1; k <= 60; ++k) {
    term = term * x / k;
    sum += term;
  }
  return sum;
}

Eigen::Matrix2cd series_exp2(const Eigen::Matrix2cd& x) {
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Identity(), term = Eigen::Matrix2cd::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

SU2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return SU2::from_pair({q[0], q[1]}, {q[2], q[3]});
}

Rot3 random_rot3(std::mt19937_64& rng) { return phi_cover(random_su2(rng)); }

Rot4 random_rot4(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix4d m;
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = n(rng);
  Eigen::HouseholderQR<Eigen::Matrix4d> qr(m);
  Eigen::Matrix4d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return Rot4::from_matrix(q);
}

// Lambda^2 action computed from wedge products of images of basis vectors.
Eigen::Matrix<double, 6, 6> wedge_oracle(const Eigen::Matrix4d& a) {
  const int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Eigen::Matrix<double, 6, 6> out;
  for (int c = 0; c < 6; ++c) {
    const Eigen::Vector4d u = a.col(idx[c][0]), v = a.col(idx[c][1]);
    for (int r = 0; r < 6; ++r) out(r, c) = u[idx[r][0]] * v[idx[r][1]] - u[idx[r][1]] * v[idx[r][0]];
  }
  return out;
}

// (e12 +- e34, e13 +- e42, e14 +- e23) / sqrt(2), written out by hand.
std::pair<Rot3, Rot3> pair_oracle(const Eigen::Matrix4d& a) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<double, 6, 6> w;
  w.setZero();
  w(0, 0) = s; w(5, 0) = s;
  w(1, 1) = s; w(4, 1) = -s;
  w(2, 2) = s; w(3, 2) = s;
  w(0, 3) = s; w(5, 3) = -s;
  w(1, 4) = s; w(4, 4) = s;
  w(2, 5) = s; w(3, 5) = -s;
  const Eigen::Matrix<double, 6, 6> m = w.transpose() * wedge_oracle(a) * w;
  return {Rot3::unchecked(m.topLeftCorner<3, 3>()), Rot3::unchecked(m.bottomRightCorner<3, 3>())};
}

Eigen::Matrix4d block_rotation(double a) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = std::cos(a);
  m(0, 1) = -std::sin(a);
  m(1, 0) = std::sin(a);
  m(1, 1) = std::cos(a);
  return m;
}

}  // namespace

TEST(CTheta, Examples) {
  EXPECT_TRUE(c_theta(0).matrix().isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  EXPECT_TRUE(c_theta(kPi).matrix().isApprox(Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix(), 1e-15));
  Eigen::Matrix3d q;
  q << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  EXPECT_LT((c_theta(kPi / 2).matrix() - q).norm(), 1e-15);
}

TEST(VPhiGamma, Examples) {
  EXPECT_LT((v_phi_gamma(0, 1.3).matrix() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  Eigen::Matrix3d q;
  q << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LT((v_phi_gamma(kPi / 2, 0).matrix() - q).norm(), 1e-15);
  EXPECT_NEAR(v_phi_gamma(kPi / 3, kPi / 4)(0, 0), 0.5, 1e-15);
}

TEST(ExpSo3, MatchesPowerSeries) {
  EXPECT_LT((exp_so3(Eigen::Vector3d::Zero()).matrix() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  EXPECT_LT((exp_so3(Eigen::Vector3d(0.7, 0, 0)).matrix() - c_theta(0.7).matrix()).norm(), 1e-14);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d c(u(rng), u(rng), u(rng));
    EXPECT_LT((exp_so3(c).matrix() - series_exp(hat(c))).norm(), 1e-12);
  }
}

TEST(AxisAngle, Examples) {
  const AxisAngle a = axis_angle_of(c_theta(kPi / 2));
  EXPECT_LT((a.axis - Eigen::Vector3d::UnitX()).norm(), 1e-14);
  EXPECT_NEAR(a.theta, kPi / 2, 1e-14);
  const Rot3 v = v_phi_gamma(0.4, 1.1);
  const Rot3 c = v * c_theta(2.0) * v.inverse();
  const AxisAngle b = axis_angle_of(c);
  EXPECT_LT((b.axis - v.matrix().col(0)).norm(), 1e-12);
  EXPECT_NEAR(b.theta, 2.0, 1e-12);
  EXPECT_THROW(axis_angle_of(Rot3::identity()), Error);
}

TEST(AxisAngle, RoundTripAndCThetaAngles) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Rot3 r = random_rot3(rng);
    const AxisAngle a = axis_angle_of(r);
    EXPECT_LT((exp_so3(a.theta * a.axis).matrix() - r.matrix()).norm(), 1e-10);
  }
  for (int k = 1; k < 100; ++k) {
    const double t = 2.0 * kPi * k / 100.0;
    const AxisAngle a = axis_angle_of(c_theta(t));
    if (k == 50) {
      EXPECT_NEAR(std::abs(a.axis[0]), 1.0, 1e-12);
      EXPECT_NEAR(a.theta, kPi, 1e-12);
    } else {
      EXPECT_NEAR(a.theta, t, 1e-10);
    }
  }
}

TEST(BTheta, Periods) {
  EXPECT_LT((b_theta(0).matrix() - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
  EXPECT_LT((b_theta(2 * kPi).matrix() + Eigen::Matrix2cd::Identity()).norm(), 1e-14);
}

TEST(PhiCover, Examples) {
  EXPECT_LT((phi_cover(SU2::identity()).matrix() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  const Rot3 r = phi_cover(SU2::from_pair({0, 1}, {0, 0}));
  EXPECT_LT((r.matrix() - Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix()).norm(), 1e-15);
  for (int k = 0; k < 100; ++k) {
    const double t = -3.0 + 0.13 * k;
    EXPECT_LT((phi_cover(b_theta(t)).matrix() - c_theta(t).matrix()).norm(), 1e-12);
  }
}

TEST(PhiCover, HomomorphismAndEvenness) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const SU2 u = random_su2(rng), v = random_su2(rng);
    EXPECT_LT((phi_cover(u * v).matrix() - (phi_cover(u) * phi_cover(v)).matrix()).norm(), 1e-12);
    EXPECT_EQ(phi_cover(-u).matrix(), phi_cover(u).matrix());
  }
}

TEST(ConjSu2, AxisAngleAndExponential) {
  EXPECT_LT((conj_su2(SU2::identity(), b_theta(0.9)).matrix() - b_theta(0.9).matrix()).norm(), 1e-15);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, kPi / 2), g(0.0, 2 * kPi), t(0.1, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double phi = u(rng), gamma = g(rng), theta = t(rng);
    const SU2 w = su2_from_phi_gamma(phi, gamma);
    const double a = std::norm(w.alpha()), b = std::norm(w.beta());
    EXPECT_NEAR(a - b, std::cos(phi), 1e-12);
    const AxisAngle ax = axis_angle_of(phi_cover(conj_su2(w, b_theta(theta))));
    EXPECT_NEAR(std::acos(std::abs(ax.axis[0])), phi, 1e-9);
    EXPECT_LT((phi_cover(w).matrix().col(0) - v_phi_gamma(phi, gamma).matrix().col(0)).norm(), 1e-12);

    const SU2 x = random_su2(rng);
    const Eigen::Matrix2cd gen = Eigen::Vector2cd(cplx(0, -theta / 2), cplx(0, theta / 2)).asDiagonal();
    const Eigen::Matrix2cd oracle = x.matrix() * series_exp2(gen) * x.matrix().adjoint();
    EXPECT_LT((conj_su2(x, b_theta(theta)).matrix() - oracle).norm(), 1e-12);
  }
}

TEST(So4Split, WedgeOracleFixesSigns) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Rot4 a = random_rot4(rng);
    const auto [p, m] = so4_to_so3_pair(a);
    const auto [po, mo] = pair_oracle(a.matrix());
    EXPECT_LT((p.matrix() - po.matrix()).norm(), 1e-12);
    EXPECT_LT((m.matrix() - mo.matrix()).norm(), 1e-12);
    EXPECT_LT((lambda2_matrix(a.matrix()) - wedge_oracle(a.matrix())).norm(), 1e-12);
  }
  const double alpha = 0.83;
  const auto [p, m] = so4_to_so3_pair(Rot4::from_matrix(block_rotation(alpha)));
  EXPECT_LT((p.matrix() - c_theta(alpha).matrix()).norm(), 1e-14);
  EXPECT_LT((m.matrix() - c_theta(-alpha).matrix()).norm(), 1e-14);
}

TEST(So4Split, IdentityHomomorphismAndLift) {
  const auto [pi, mi] = so4_to_so3_pair(Rot4::identity());
  EXPECT_LT((pi.matrix() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  EXPECT_LT((mi.matrix() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  EXPECT_LT((lift_so3_pair(Rot3::identity(), Rot3::identity()).matrix() - Eigen::Matrix4d::Identity()).norm(), 1e-15);
  EXPECT_LT((lift_so3_pair(c_theta(0.6), c_theta(-0.6)).matrix() - block_rotation(0.6)).norm(), 1e-12);

  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    const Rot4 a = random_rot4(rng), b = random_rot4(rng);
    const auto [ap, am] = so4_to_so3_pair(a);
    const auto [bp, bm] = so4_to_so3_pair(b);
    const auto [cp, cm] = so4_to_so3_pair(a * b);
    EXPECT_LT((cp.matrix() - (ap * bp).matrix()).norm(), 1e-11);
    EXPECT_LT((cm.matrix() - (am * bm).matrix()).norm(), 1e-11);

    const Rot3 x = random_rot3(rng), y = random_rot3(rng);
    const auto [xp, ym] = so4_to_so3_pair(lift_so3_pair(x, y));
    EXPECT_LT((xp.matrix() - x.matrix()).norm(), 1e-10);
    EXPECT_LT((ym.matrix() - y.matrix()).norm(), 1e-10);
    const Rot4 l = lift_so3_pair(ap, am);
    EXPECT_LT(std::min((l.matrix() - a.matrix()).norm(), (l.matrix() + a.matrix()).norm()), 1e-10);
    EXPECT_GE(l.matrix().trace(), -1e-12);
  }
}

TEST(Validation, RejectsNonOrthogonal) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 1) = 1e-6;
  EXPECT_THROW(Rot3::from_matrix(m), Error);
  EXPECT_THROW(Rot3::from_matrix(-Eigen::Matrix3d::Identity()), Error);
  EXPECT_THROW(SU2::from_pair({1.0, 0.0}, {0.1, 0.0}), Error);
}

TEST(Reorthonormalize, RemovesDrift) {
  Rot3 r = c_theta(1e-3) * v_phi_gamma(0.3, 0.2);
  for (int i = 0; i < 100000; ++i) r = r * c_theta(0.01);
  const Rot3 s = r.reorthonormalized();
  EXPECT_LT(s.orthogonality_error(), 1e-14);
  EXPECT_LT((s.matrix() - r.matrix()).norm(), 1e-9);
}
