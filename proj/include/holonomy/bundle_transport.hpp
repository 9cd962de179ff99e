#pragma once

#include "holonomy/linalg_groups.hpp"

#include <string>
#include <utility>
#include <vector>

namespace holonomy {

enum class Fiber { real4, complex2 };

/// Constant-coefficient connection d + P1 dx + P2 dy on the product bundle
/// over the torus. Only the pair matching `fiber` is meaningful.
struct Connection {
  Fiber fiber = Fiber::real4;
  Eigen::Matrix4d p1r = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d p2r = Eigen::Matrix4d::Zero();
  Eigen::Matrix2cd p1c = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd p2c = Eigen::Matrix2cd::Zero();
  bool su2 = false;

  /// Validating constructors; throw Error(InvariantViolation).
  static Connection real4(const Eigen::Matrix4d& p1, const Eigen::Matrix4d& p2, double tol = kOrthTol);
  static Connection complex2(const Eigen::Matrix2cd& p1, const Eigen::Matrix2cd& p2, bool su2 = false,
                             double tol = kOrthTol);

  int dim() const { return fiber == Fiber::real4 ? 4 : 2; }
  /// P_k as a complex matrix (real4 embedded).
  Eigen::MatrixXcd p(int k) const;
};

enum class Axis { x, y };

struct Step {
  Axis axis = Axis::x;
  long long winding = 1;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Normal polygonal curve from the origin reduced to its (axis, winding) steps.
struct NPCWord {
  std::vector<Step> steps;

  /// Parses "x:3,y:-2,x:1"; the empty string is the constant curve.
  /// Throws Error(ParseError) naming the offending token.
  static NPCWord parse(const std::string& text);
  std::string to_string() const;
  NPCWord operator+(const NPCWord& o) const;
  friend bool operator==(const NPCWord&, const NPCWord&) = default;
};

template <class G>
struct HolonomyGens {
  G a1;
  G a2;
};

/// Connections with exp(-2 pi P_k) = a_k, P_k the principal logarithm.
Connection connection_from_gens(const Rot4& a1, const Rot4& a2);
Connection connection_from_gens(const SU2& a1, const SU2& a2);
Connection connection_from_gens(const U2Mat& a1, const U2Mat& a2);

/// Principal logarithms; rotation angles in (-pi, pi].
Eigen::Matrix4d log_so4(const Rot4& a);
Eigen::Matrix2cd log_su2(const SU2& a);
/// Central phase i*gamma*I (gamma = arg det / 2, arg det in [0, 2 pi)) plus the SU(2) part.
Eigen::Matrix2cd log_u2(const U2Mat& a);

/// A_x = exp(-2 pi P1), A_y = exp(-2 pi P2).
Eigen::MatrixXcd holonomy_matrix(const Connection& conn, Axis axis);
HolonomyGens<Rot4> holonomy_gens_so4(const Connection& conn);
HolonomyGens<U2Mat> holonomy_gens_u2(const Connection& conn);

/// Product A_last^m ... A_first^m of the step holonomies.
Eigen::MatrixXcd word_matrix(const Connection& conn, const NPCWord& word);

/// Parallel transport of v along the curve. Throws Error(DimensionMismatch).
Eigen::VectorXcd transport(const Connection& conn, const NPCWord& word, const Eigen::VectorXcd& v);
Eigen::VectorXd transport(const Connection& conn, const NPCWord& word, const Eigen::VectorXd& v);

/// RK4 integration of xi' = -P xi along each segment (length 2 pi |m|).
Eigen::VectorXcd transport_ode_oracle(const Connection& conn, const NPCWord& word, const Eigen::VectorXcd& v,
                                      double step);

/// Self-dual and anti-self-dual generator pairs (C_{+,1}, C_{+,2}), (C_{-,1}, C_{-,2}).
/// Throws Error(WrongFiber) for complex fibers.
std::pair<HolonomyGens<Rot3>, HolonomyGens<Rot3>> lambda2_gens(const Connection& conn);

}  // namespace holonomy
