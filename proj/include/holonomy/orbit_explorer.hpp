#pragma once

#include "holonomy/linalg_groups.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace holonomy {

enum class GroupKind { so3, so4, su2, u2 };

std::string to_string(GroupKind k);
GroupKind group_kind_from_string(const std::string& s);

/// Approximate-membership index on points of R^dim: two keys are the same
/// point when their max-coordinate difference is at most tol. Keys are
/// bucketed on a grid of cell 1024 * tol; lookups also visit the neighbor
/// cell in every coordinate that lies within tol of a cell wall.
class ApproxIndex {
public:
  ApproxIndex(int dim, double tol);

  /// Index of a stored key within tol, or -1.
  long find(const double* key) const;
  /// Stores key unconditionally and returns its index.
  long insert(const double* key);
  /// find, then insert if absent; returns {index, inserted}.
  std::pair<long, bool> find_or_insert(const double* key);

  std::size_t size() const { return count_; }
  const double* key(long i) const { return keys_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_); }

private:
  std::uint64_t cell_hash(const long long* cell) const;
  int dim_;
  double tol_;
  double cell_;
  std::size_t count_ = 0;
  std::vector<double> keys_;
  std::unordered_map<std::uint64_t, std::vector<long>> buckets_;
};

/// Per-kind coordinates used for deduplication and metric computations.
template <class G>
struct GroupTraits;

template <>
struct GroupTraits<Rot3> {
  static constexpr GroupKind kind = GroupKind::so3;
  static constexpr int key_dim = 9;
  static void key(const Rot3& g, double* out);
};
template <>
struct GroupTraits<Rot4> {
  static constexpr GroupKind kind = GroupKind::so4;
  static constexpr int key_dim = 16;
  static void key(const Rot4& g, double* out);
};
template <>
struct GroupTraits<SU2> {
  static constexpr GroupKind kind = GroupKind::su2;
  static constexpr int key_dim = 4;
  static void key(const SU2& g, double* out);
};
template <>
struct GroupTraits<U2Mat> {
  static constexpr GroupKind kind = GroupKind::u2;
  static constexpr int key_dim = 8;
  static void key(const U2Mat& g, double* out);
};

struct BallLimits {
  int max_depth = 40;
  std::size_t max_size = 100000;
  double tol = 1e-9;
};

/// Breadth-first enumeration of words in the generators and their inverses.
/// Elements are stored in discovery order, so the first size_at_depth[d]
/// entries form the ball of radius d.
template <class G>
struct GroupBall {
  GroupKind kind = GroupTraits<G>::kind;
  std::vector<G> generators;  ///< input generators followed by their inverses
  std::vector<G> elements;
  std::vector<long> parent;   ///< -1 for the identity
  std::vector<int> via;       ///< generator index applied on the left of the parent
  std::vector<std::size_t> size_at_depth;
  int depth = 0;
  bool saturated = false;
  /// Growth over the last recorded depths is faster than linear.
  bool superlinear_growth = false;

  /// Generator indices w with elements[i] = generators[w[0]] * ... * generators[w.back()].
  std::vector<int> word(std::size_t i) const;
};

template <class G>
GroupBall<G> group_ball(const std::vector<G>& gens, const BallLimits& limits = {});

/// Quasi-random Haar-distributed probes (Halton sequence with a seeded
/// Cranley-Patterson rotation).
template <class G>
std::vector<G> group_probes(int count, std::uint64_t seed);

/// Distance used for covering radii: relative rotation angle on SO(3),
/// ||a - b||_F / sqrt(n) otherwise.
double group_distance(const Rot3& a, const Rot3& b);
double group_distance(const Rot4& a, const Rot4& b);
double group_distance(const SU2& a, const SU2& b);
double group_distance(const U2Mat& a, const U2Mat& b);

/// Max over probes of the distance to the nearest of the first `prefix`
/// ball elements (all when prefix is 0).
template <class G>
double covering_radius_group(const GroupBall<G>& ball, int probes = 4096, std::uint64_t seed = 0,
                             std::size_t prefix = 0);

/// Covering radius of each recorded depth prefix, computed incrementally.
template <class G>
std::vector<double> covering_radius_snapshots(const GroupBall<G>& ball, int probes = 4096, std::uint64_t seed = 0);

// ------------------------------------------------------------------ orbits

struct Plane {
  Eigen::Vector3d normal;
  double offset = 0.0;
};

struct Confinement {
  enum class Kind { point, circles, full } kind = Kind::full;
  std::vector<Plane> planes;
  double max_deviation = 0.0;
};

std::string to_string(Confinement::Kind k);

struct OrbitLimits {
  int max_depth = 40;
  std::size_t max_size = 100000;
  double tol = 1e-9;
  int probes = 4096;
  std::uint64_t seed = 0;
  double confinement_tol = 1e-8;
};

struct Snapshot {
  int depth = 0;
  std::size_t size = 0;
  double covering_radius = 0.0;
};

struct OrbitReport {
  /// Unit vectors (dim 3), or stacked pairs (dim 6) for S^2 x S^2; sorted.
  std::vector<Eigen::VectorXd> points;
  double covering_radius = 0.0;
  /// One entry per sphere factor.
  std::vector<Confinement> confinement;
  int depth = 0;
  bool saturated = false;
  std::vector<Snapshot> snapshots;
};

/// Fibonacci lattice on S^2.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

/// Orbit of omega under the group generated by gens (and inverses).
OrbitReport orbit(const std::vector<Rot3>& gens, const Eigen::Vector3d& omega, const OrbitLimits& limits = {});

/// Orbit of (p_plus, p_minus) under the diagonal action on S^2 x S^2; the
/// covering radius uses the max of the two angular distances.
OrbitReport product_orbit(const std::vector<std::pair<Rot3, Rot3>>& gens, const Eigen::Vector3d& p_plus,
                          const Eigen::Vector3d& p_minus, const OrbitLimits& limits = {});

/// point / circles (at most two planes) / full.
Confinement detect_confinement(const std::vector<Eigen::Vector3d>& points, double tol = 1e-8);

// ------------------------------------------------------------------ search

struct ApproxResult {
  bool found = false;
  std::vector<int> word;  ///< indices into the generator list (inverses appended)
  double distance = 0.0;
  std::size_t expansions = 0;
};

/// Meet-in-the-middle search: words are enumerated breadth-first and each new
/// word w is matched against earlier words u with w u or u w within eps of
/// the target. The alphabet is the generators, their inverses, and powers
/// g^k (2 <= |k| <= max_power). expansions counts enumerated words.
ApproxResult approximate_element(const std::vector<Rot3>& gens, const Rot3& target, double eps,
                                 std::size_t budget = 1000000, int max_power = 1);

/// The alphabet used by approximate_element.
std::vector<Rot3> search_alphabet(const std::vector<Rot3>& gens, int max_power);

}  // namespace holonomy
