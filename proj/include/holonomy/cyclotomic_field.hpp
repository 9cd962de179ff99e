#pragma once

#include "holonomy/exact_algebra.hpp"

#include <array>
#include <vector>

namespace holonomy {

/// Element of the cyclotomic field Q(zeta_N), zeta_N = exp(2 pi i / N),
/// stored in the power basis 1, zeta, ..., zeta^(phi(N) - 1).
class CycloElem {
public:
  CycloElem() = default;
  CycloElem(int n, const Rational& r);

  static CycloElem zeta_pow(int n, long long k);
  /// cos(pi * r) and sin(pi * r); requires 4 | n and n * r / 2 integral.
  static CycloElem cos_pi(int n, const Rational& r);
  static CycloElem sin_pi(int n, const Rational& r);

  int order() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  /// Complex conjugate (zeta -> zeta^-1).
  CycloElem conj() const;
  std::complex<double> to_complex() const;

  CycloElem operator-() const;
  friend CycloElem operator+(const CycloElem& a, const CycloElem& b);
  friend CycloElem operator-(const CycloElem& a, const CycloElem& b);
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
  friend CycloElem operator*(const Rational& k, const CycloElem& a);
  friend bool operator==(const CycloElem& a, const CycloElem& b);

private:
  CycloElem(int n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}
  static CycloElem reduce(int n, std::vector<Rational> raw);
  int n_ = 4;
  std::vector<Rational> c_;
};

/// Minimal polynomial over Q of x, from the first linear dependence among
/// 1, x, x^2, ... (exact elimination).
RatPoly min_poly(const CycloElem& x);

/// Smallest N with 4 | N such that every pi * r_i is a multiple of 2 pi / N.
int common_cyclotomic_order(const std::vector<Rational>& angles_over_pi);

/// 3x3 matrix over Q(zeta_N), row-major.
class CycloMat3 {
public:
  CycloMat3() = default;
  static CycloMat3 identity(int n);

  int order() const { return n_; }
  const CycloElem& operator()(int i, int j) const { return e_[static_cast<std::size_t>(3 * i + j)]; }
  CycloElem& operator()(int i, int j) { return e_[static_cast<std::size_t>(3 * i + j)]; }

  CycloMat3 operator*(const CycloMat3& o) const;
  CycloMat3 transpose() const;
  CycloMat3 pow(long long k) const;
  CycloElem trace() const;
  Eigen::Matrix3d to_double() const;
  friend bool operator==(const CycloMat3& a, const CycloMat3& b) { return a.e_ == b.e_; }

private:
  int n_ = 4;
  std::array<CycloElem, 9> e_;
};

/// Exact counterparts of c_theta and v_phi_gamma for angles pi * r.
CycloMat3 exact_c_theta(int n, const Rational& theta_over_pi);
CycloMat3 exact_v_phi_gamma(int n, const Rational& phi_over_pi, const Rational& gamma_over_pi);

/// Minimal polynomial over Q of the trace of an exact rotation.
RatPoly trace_min_poly(const CycloMat3& r);

}  // namespace holonomy
