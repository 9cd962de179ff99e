#pragma once

#include "holonomy/linalg_groups.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace holonomy {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n, const BigInt& d);
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return v_.sign(); }
  double to_double() const { return static_cast<double>(v_); }
  std::string to_string() const;

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

private:
  explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_rational v_;
};

/// Polynomial with rational coefficients, constant term first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly monomial(int degree, Rational c = 1);
  static RatPoly from_ints(const std::vector<long long>& coeffs);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  Rational leading() const;

  bool is_monic() const;
  bool is_integral() const;
  bool is_palindromic() const;
  RatPoly monic() const;
  RatPoly derivative() const;
  /// p(x + c)
  RatPoly shifted(const Rational& c) const;
  /// p(c * x)
  RatPoly scaled(const Rational& c) const;

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;
  Rational eval(const Rational& x) const;
  /// Numeric roots (companion-matrix eigenvalues).
  std::vector<std::complex<double>> roots() const;

  std::string to_string(const std::string& var = "x") const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rational& k, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

private:
  void trim();
  std::vector<Rational> c_;
};

struct PolyDivision {
  RatPoly quotient;
  RatPoly remainder;
};
PolyDivision divmod(const RatPoly& a, const RatPoly& b);
/// Monic greatest common divisor (zero if both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
/// Square-free part p / gcd(p, p').
RatPoly squarefree_part(const RatPoly& p);

/// a + b*sqrt(d), d a square-free positive integer; rational values are
/// stored with b = 0 and d = 1.
class QuadExt {
public:
  QuadExt() = default;
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  /// d may be any positive integer; square factors are pulled into b.
  QuadExt(Rational a, Rational b, long long d);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long long d() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  QuadExt conj() const { return make(a_, -b_, d_); }
  /// a^2 - b^2 d, the field norm.
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }
  double to_double() const;
  /// Exact sign of the real value.
  int sign() const;
  std::string to_string() const;

  QuadExt operator-() const { return make(-a_, -b_, d_); }
  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y);
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

private:
  static QuadExt make(Rational a, Rational b, long long d);
  static long long common_d(const QuadExt& x, const QuadExt& y);
  Rational a_;
  Rational b_;
  long long d_ = 1;
};

/// Angle as an exact rational multiple of pi, an exact quadratic-surd
/// multiple of pi, or a plain floating-point value in radians.
class AngleSpec {
public:
  enum class Kind { rational_pi, symbolic_quad, numeric };

  static AngleSpec rational_pi(Rational p_over_q);
  /// Normalizes to rational_pi when the multiplier is rational.
  static AngleSpec symbolic_quad(QuadExt multiple_of_pi);
  static AngleSpec numeric(double radians);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ != Kind::numeric; }
  /// Multiplier of pi for exact kinds.
  const QuadExt& over_pi() const { return over_pi_; }
  const Rational& rational_over_pi() const { return over_pi_.a(); }
  double radians() const;
  AngleSpec halved() const;
  std::string to_string() const;

private:
  Kind kind_ = Kind::rational_pi;
  QuadExt over_pi_;
  double radians_ = 0.0;
};

/// n-th cyclotomic polynomial (n >= 1).
RatPoly cyclotomic(int n);

/// Euler's totient.
long long euler_phi(long long n);

struct RootOfUnityResult {
  enum class Status { yes, no, not_applicable } status = Status::no;
  int order = 0;  ///< valid when status == yes
};

/// Decides whether the (irreducible, monic) polynomial f is cyclotomic.
/// not_applicable is returned for the zero / constant polynomial.
/// Throws Error(NotMonic).
RootOfUnityResult is_root_of_unity(const RatPoly& f);

/// Minimal polynomial over Q of a unit-circle zeta, given
/// s = zeta + 1/zeta (that is, the rotation trace minus one).
/// Throws Error(TraceOutOfRange) if |s| > 2.
RatPoly min_poly_from_trace(const QuadExt& s);

/// Same as min_poly_from_trace but for the rotation trace tr = s + 1.
RatPoly min_poly_from_rotation_trace(const QuadExt& tr);

/// Given the minimal polynomial g of s = zeta + 1/zeta (|s| < 2), returns
/// lambda^deg(g) * g(lambda + 1/lambda), the minimal polynomial of zeta.
RatPoly lift_trace_minpoly(const RatPoly& g);

/// Irreducible factor of f that vanishes at root (within 1e-8). Uses
/// numerically guided candidate factors verified by exact division: linear
/// and quadratic factors are searched; degree <= 4 results are therefore
/// proven irreducible.
RatPoly irreducible_factor_containing(const RatPoly& f, std::complex<double> root);

/// Best rational approximation p/q of x with q <= max_den from the continued
/// fraction convergents; returned only if |x - p/q| < tol.
std::optional<std::pair<long long, long long>> rational_match(double x, long long max_den, double tol);

/// Numeric-path settings for condition (C).
struct NumericTestConfig {
  long long max_denominator = 1'000'000;
  double tolerance = 1e-12;
};

/// Outcome of the irrational-angle test for a rotation eigenvalue zeta.
struct ConditionC {
  enum class Status { holds, fails, numeric_only } status = Status::numeric_only;
  int order = 0;                   ///< root-of-unity order when fails (or numerically likely)
  std::optional<RatPoly> minpoly;  ///< exact certificate when available
  std::string reason;
  /// Numeric path: "likely irrational" or "likely rational p/q".
  std::string numeric_verdict;
  bool numeric_likely_holds = false;
  double angle_over_pi = 0.0;
};

/// Condition (C) for a rotation by the given angle (zeta = exp(i angle)).
ConditionC check_condition_C(const AngleSpec& angle, const NumericTestConfig& cfg = {});

/// Numeric path on a rotation matrix; the identity fails with order 1.
ConditionC check_condition_C(const Rot3& r, const NumericTestConfig& cfg = {});

/// Exact path from the minimal polynomial of the rotation trace tr (|tr - 1| <= 2).
ConditionC check_condition_C_trace_minpoly(const RatPoly& trace_minpoly, double trace_value);

}  // namespace holonomy
