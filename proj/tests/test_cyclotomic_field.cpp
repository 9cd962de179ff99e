#include "holonomy/classify_certify.hpp"
#include "holonomy/cyclotomic_field.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace holonomy;

namespace {

constexpr double kPi = std::numbers::pi;

RatPoly poly(std::initializer_list<Rational> c) { return RatPoly(std::vector<Rational>(c)); }

}  // namespace

TEST(CycloElem, TrigValuesMatchNumerics) {
  for (int n : {4, 8, 12, 20, 28, 52}) {
    for (int k = -n; k <= n; ++k) {
      const Rational r(2 * k, n);
      EXPECT_NEAR(CycloElem::cos_pi(n, r).to_complex().real(), std::cos(kPi * r.to_double()), 1e-12);
      EXPECT_NEAR(CycloElem::cos_pi(n, r).to_complex().imag(), 0.0, 1e-12);
      EXPECT_NEAR(CycloElem::sin_pi(n, r).to_complex().real(), std::sin(kPi * r.to_double()), 1e-12);
    }
  }
}

TEST(CycloElem, FieldIdentities) {
  const int n = 40;
  for (int k = 0; k < 10; ++k) {
    const Rational r(2 * k, n);
    const CycloElem c = CycloElem::cos_pi(n, r), s = CycloElem::sin_pi(n, r);
    EXPECT_EQ(c * c + s * s, CycloElem(n, Rational(1)));
    EXPECT_EQ(CycloElem::zeta_pow(n, k) * CycloElem::zeta_pow(n, -k), CycloElem(n, Rational(1)));
    EXPECT_EQ(CycloElem::zeta_pow(n, k).conj(), CycloElem::zeta_pow(n, -k));
  }
}

TEST(MinPoly, KnownAlgebraicNumbers) {
  // 2 cos(2 pi / 7) has minimal polynomial x^3 + x^2 - 2x - 1.
  const CycloElem c = Rational(2) * CycloElem::cos_pi(28, Rational(2, 7));
  EXPECT_EQ(min_poly(c), RatPoly::from_ints({-1, -2, 1, 1}));
  EXPECT_EQ(min_poly(CycloElem::cos_pi(8, Rational(1, 4))), poly({Rational(-1, 2), 0, 1}));
  EXPECT_EQ(min_poly(CycloElem::zeta_pow(12, 1)), cyclotomic(12));
  EXPECT_EQ(min_poly(CycloElem(20, Rational(3, 7))), poly({Rational(-3, 7), 1}));
}

TEST(CommonOrder, SmallestMultipleOfFour) {
  EXPECT_EQ(common_cyclotomic_order({Rational(1, 2), Rational(1, 4)}), 8);
  EXPECT_EQ(common_cyclotomic_order({Rational(1), Rational(2, 3)}), 12);
  EXPECT_EQ(common_cyclotomic_order({Rational(0)}), 4);
}

TEST(CycloMat3, MatchesFloatingConstructors) {
  for (const auto& [t, p, g] : {std::tuple{Rational(1, 2), Rational(1, 2), Rational(0)},
                                std::tuple{Rational(2, 5), Rational(1, 3), Rational(1, 4)},
                                std::tuple{Rational(6, 7), Rational(1, 6), Rational(3, 2)}}) {
    const int n = common_cyclotomic_order({t, p, g});
    EXPECT_LT((exact_c_theta(n, t).to_double() - c_theta(kPi * t.to_double()).matrix()).norm(), 1e-12);
    EXPECT_LT((exact_v_phi_gamma(n, p, g).to_double() - v_phi_gamma(kPi * p.to_double(), kPi * g.to_double()).matrix())
                  .norm(),
              1e-12);
    const CycloMat3 v = exact_v_phi_gamma(n, p, g);
    EXPECT_EQ(v * v.transpose(), CycloMat3::identity(n));
  }
}

TEST(CycloMat3, PowerIdentities) {
  // (V C(2 pi / 8) V^T)^(2^0) = V C(pi / 4) V^T and (V C(2 pi / 6) V^T)^2 = V C(2 pi / 3) V^T.
  const int n = 24;
  const CycloMat3 v = exact_v_phi_gamma(n, Rational(1, 2), Rational(0));
  const CycloMat3 c6 = v * exact_c_theta(n, Rational(1, 3)) * v.transpose();
  EXPECT_EQ(c6.pow(2), v * exact_c_theta(n, Rational(2, 3)) * v.transpose());
  EXPECT_EQ(c6.pow(6), CycloMat3::identity(n));
  EXPECT_EQ(c6.pow(-1), c6.transpose());
}

TEST(TraceMinPoly, ProductOfQuarterAndEighthTurns) {
  const int n = 8;
  const CycloMat3 v = exact_v_phi_gamma(n, Rational(1, 2), Rational(0));
  const CycloMat3 p = exact_c_theta(n, Rational(1, 2)) * v * exact_c_theta(n, Rational(1, 4)) * v.transpose();
  // trace = 1 + (sqrt(2) - 2) / 2 = sqrt(2) / 2.
  EXPECT_EQ(trace_min_poly(p), poly({Rational(-1, 2), 0, 1}));
  EXPECT_NEAR(p.trace().to_complex().real(), std::sqrt(2.0) / 2.0, 1e-14);
}

TEST(ChebyshevRoute, AgreesWithCyclotomicRoute) {
  for (int p : {3, 5, 7, 11, 13}) {
    GenConfig cfg;
    cfg.theta1 = AngleSpec::rational_pi(Rational(1, 2));
    cfg.theta2 = AngleSpec::rational_pi(Rational(2, p));
    const MinpolyResult r = minpoly_product(cfg, "12");
    ASSERT_TRUE(r.exact);
    ASSERT_TRUE(r.poly);
    EXPECT_EQ(*r.poly, chebyshev_prime_family_minpoly(p)) << p;
    EXPECT_EQ(r.poly->degree(), p - 1);
    EXPECT_TRUE(has_prime_family_shape(*r.poly)) << p;
  }
}
