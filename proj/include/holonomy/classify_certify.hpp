#pragma once

#include "holonomy/cyclotomic_field.hpp"
#include "holonomy/exact_algebra.hpp"
#include "holonomy/linalg_groups.hpp"
#include "holonomy/orbit_explorer.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace holonomy {

/// C_1 = C(theta1), C_2 = V(phi, gamma) C(theta2) V^T.
struct GenConfig {
  AngleSpec theta1 = AngleSpec::rational_pi(0);
  AngleSpec theta2 = AngleSpec::rational_pi(0);
  AngleSpec phi = AngleSpec::rational_pi(Rational(1, 2));
  AngleSpec gamma = AngleSpec::rational_pi(0);

  /// Throws Error(InvariantViolation) unless phi lies in (0, pi/2].
  void validate() const;
  /// All four angles are rational multiples of pi.
  bool is_rational() const;
};

/// A rotation with whatever exact information is known about it.
struct AnnotatedRot {
  Rot3 r;
  std::optional<AngleSpec> angle;   ///< rotation angle (axis oriented as constructed)
  std::optional<CycloMat3> exact;   ///< entries in a cyclotomic field
};

enum class Claim { condA, condB, condC, thm_main, thm_main2, thm_main3, thm_main4, thm_main5, prop_cond1 };
enum class Verdict { holds, fails, numeric_only };

std::string to_string(Claim c);
std::string to_string(Verdict v);

struct Certificate {
  Claim claim = Claim::condA;
  Verdict verdict = Verdict::fails;
  nlohmann::json evidence = nlohmann::json::object();
};

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const RatPoly& p);

std::pair<Rot3, Rot3> gens_from_config(const GenConfig& cfg);
/// Generators with their angles and, for rational configurations, exact matrices.
std::pair<AnnotatedRot, AnnotatedRot> annotated_gens_from_config(const GenConfig& cfg);

struct AbcOptions {
  double tol = 1e-9;
  NumericTestConfig numeric;
};

/// Certificates condA, condB, condC, then thm_main and thm_main2 (whose
/// hypotheses are exactly (A), (B), (C)).
std::vector<Certificate> check_ABC(const AnnotatedRot& c1, const AnnotatedRot& c2, const AbcOptions& opts = {});
std::vector<Certificate> check_ABC(const Rot3& c1, const Rot3& c2, const AbcOptions& opts = {});

/// (a) one of theta_k / pi irrational and (b) the other not an integer.
Certificate check_prop_cond1(const GenConfig& cfg, const AbcOptions& opts = {});

struct DerivedCase {
  enum class Kind { products, dihedral_pow2, dihedral_prime } kind = Kind::products;
  int m = 3;  ///< dihedral_pow2: n = 2^m
  int n = 3;  ///< dihedral_prime
  int p = 3;  ///< dihedral_prime
};

/// Throws Error(BadCaseParams).
std::pair<Rot3, Rot3> derived_gens(const DerivedCase& c, const Rot3& c1, const Rot3& c2);
std::pair<CycloMat3, CycloMat3> derived_gens(const DerivedCase& c, const CycloMat3& c1, const CycloMat3& c2);
std::pair<AnnotatedRot, AnnotatedRot> derived_gens(const DerivedCase& c, const AnnotatedRot& c1, const AnnotatedRot& c2);
/// The power of C'_2 used by the case (1 for products).
long long derived_power(const DerivedCase& c);

struct Classification {
  enum class Kind { cyclic, dihedral, alt4, sym4, alt5, infinite_likely, infinite_certified, unrecognized };
  Kind kind = Kind::infinite_likely;
  std::optional<long long> order;
  std::size_t ball_size = 0;
  int depth = 0;
  bool saturated = false;
  std::vector<long long> element_orders;  ///< sorted, with multiplicity
  nlohmann::json evidence = nlohmann::json::object();
};

std::string to_string(Classification::Kind k);
nlohmann::json to_json(const Classification& c);

struct ClassifyOptions {
  BallLimits limits{40, 100000, 1e-9};
  int certificate_depth = 6;
};

Classification classify(const std::vector<AnnotatedRot>& gens, const ClassifyOptions& opts = {});
Classification classify(const GenConfig& cfg, const ClassifyOptions& opts = {});

/// Order of g in a finite group (within tol of the identity), at most limit; 0 if not reached.
long long element_order(const Rot3& g, long long limit, double tol = 1e-8);

struct ComplexityDegree {
  bool finite = false;
  std::size_t degree = 0;  ///< orbit size when finite
  OrbitReport report;
};

ComplexityDegree complexity_degree(const std::vector<Rot3>& gens, const Eigen::Vector3d& omega,
                                   const OrbitLimits& limits = {});

/// Smallest N >= 1 with N * r an even integer.
long long smallest_even_multiple(const Rational& r);

Certificate check_thm_main3(const GenConfig& plus, const GenConfig& minus, const AbcOptions& opts = {});

/// theta_k: B-angle of b_k when known exactly (b_k conjugate to B(theta_k)).
Certificate check_thm_main4(const SU2& b1, const SU2& b2, std::optional<AngleSpec> theta1 = std::nullopt,
                            std::optional<AngleSpec> theta2 = std::nullopt, const AbcOptions& opts = {});

struct Main5Input {
  U2Mat b1;
  U2Mat b2;
  std::optional<AngleSpec> psi_angle;  ///< psi * pi, the angle of B_1
  std::optional<AngleSpec> q_angle;    ///< q * pi
  std::optional<AngleSpec> phase;      ///< gamma
};

Certificate check_thm_main5(const Main5Input& in, const AbcOptions& opts = {});

/// b = e^{i gamma} * s with s in SU(2), arg det b in [0, 2 pi), gamma = arg det / 2.
std::pair<double, SU2> split_u2(const U2Mat& b);

/// Builders used by the theorem checks and the CLI.
SU2 su2_gen_from_config(const AngleSpec& theta, const AngleSpec& phi, const AngleSpec& gamma);

struct MinpolyResult {
  bool exact = false;
  std::optional<RatPoly> poly;  ///< minimal polynomial of a non-unit eigenvalue
  std::optional<RatPoly> trace_poly;
  double eigenphase = 0.0;      ///< numeric rotation angle in [0, pi]
  std::string reason;
};

/// Minimal polynomial of an eigenvalue of the product of generators named
/// by `which` (digits 1 and 2, left to right).
MinpolyResult minpoly_product(const GenConfig& cfg, const std::string& which);

/// Minimal polynomial of zeta for C(pi/2) * V C(2 pi / n) V^T (phi = pi/2,
/// n an odd prime), computed from Chebyshev polynomials only.
RatPoly chebyshev_prime_family_minpoly(int n);

/// Chebyshev polynomial T_n.
RatPoly chebyshev_t(int n);

/// c_0 = c_{2d} = 1, 2^i c_i integral (i < d), 2^d c_d an odd integer.
bool has_prime_family_shape(const RatPoly& f);

}  // namespace holonomy
