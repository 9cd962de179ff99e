#include "holonomy/orbit_explorer.hpp"

#include "holonomy/errors.hpp"
#include "holonomy/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace holonomy {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::so3: return "so3";
    case GroupKind::so4: return "so4";
    case GroupKind::su2: return "su2";
    case GroupKind::u2: return "u2";
  }
  return "so3";
}

GroupKind group_kind_from_string(const std::string& s) {
  if (s == "so3") return GroupKind::so3;
  if (s == "so4") return GroupKind::so4;
  if (s == "su2") return GroupKind::su2;
  if (s == "u2") return GroupKind::u2;
  throw Error(Errc::ParseError, "unknown group kind '" + s + "'");
}

std::string to_string(Confinement::Kind k) {
  switch (k) {
    case Confinement::Kind::point: return "point";
    case Confinement::Kind::circles: return "circles";
    case Confinement::Kind::full: return "full";
  }
  return "full";
}

// ------------------------------------------------------------------ ApproxIndex

ApproxIndex::ApproxIndex(int dim, double tol) : dim_(dim), tol_(tol), cell_(1024.0 * tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvariantViolation, "dedup tolerance must be positive");
}

std::uint64_t ApproxIndex::cell_hash(const long long* cell) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (int i = 0; i < dim_; ++i) {
    h ^= static_cast<std::uint64_t>(cell[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return h;
}

long ApproxIndex::find(const double* key) const {
  std::array<long long, 16> base{};
  std::array<int, 16> near{};
  std::array<int, 16> near_dims{};
  int n_near = 0;
  for (int i = 0; i < dim_; ++i) {
    const double s = key[i] / cell_;
    const double f = std::floor(s);
    base[static_cast<std::size_t>(i)] = static_cast<long long>(f);
    const double frac = (s - f) * cell_;
    if (frac <= tol_) {
      near[static_cast<std::size_t>(i)] = -1;
    } else if (cell_ - frac <= tol_) {
      near[static_cast<std::size_t>(i)] = 1;
    } else {
      continue;
    }
    near_dims[static_cast<std::size_t>(n_near++)] = i;
  }
  std::array<long long, 16> cell{};
  for (unsigned mask = 0; mask < (1u << n_near); ++mask) {
    cell = base;
    for (int b = 0; b < n_near; ++b) {
      if (mask & (1u << b)) {
        const auto d = static_cast<std::size_t>(near_dims[static_cast<std::size_t>(b)]);
        cell[d] += near[d];
      }
    }
    const auto it = buckets_.find(cell_hash(cell.data()));
    if (it == buckets_.end()) continue;
    for (long id : it->second) {
      const double* other = this->key(id);
      bool close = true;
      for (int i = 0; i < dim_ && close; ++i) close = std::abs(other[i] - key[i]) <= tol_;
      if (close) return id;
    }
  }
  return -1;
}

long ApproxIndex::insert(const double* key) {
  std::array<long long, 16> cell{};
  for (int i = 0; i < dim_; ++i) cell[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor(key[i] / cell_));
  const long id = static_cast<long>(count_++);
  keys_.insert(keys_.end(), key, key + dim_);
  buckets_[cell_hash(cell.data())].push_back(id);
  return id;
}

std::pair<long, bool> ApproxIndex::find_or_insert(const double* key) {
  const long found = find(key);
  if (found >= 0) return {found, false};
  return {insert(key), true};
}

// ------------------------------------------------------------------ traits

void GroupTraits<Rot3>::key(const Rot3& g, double* out) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[3 * i + j] = g(i, j);
  }
}

void GroupTraits<Rot4>::key(const Rot4& g, double* out) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[4 * i + j] = g(i, j);
  }
}

void GroupTraits<SU2>::key(const SU2& g, double* out) {
  const Eigen::Vector4d c = g.coords();
  for (int i = 0; i < 4; ++i) out[i] = c[i];
}

void GroupTraits<U2Mat>::key(const U2Mat& g, double* out) {
  const Eigen::Matrix2cd& m = g.matrix();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[2 * (2 * i + j)] = m(i, j).real();
      out[2 * (2 * i + j) + 1] = m(i, j).imag();
    }
  }
}

namespace {

template <class G>
G identity_of() {
  return G::identity();
}

template <class G>
G reortho(const G& g) {
  return g.reorthonormalized();
}

}  // namespace

// ------------------------------------------------------------------ group ball

template <class G>
std::vector<int> GroupBall<G>::word(std::size_t i) const {
  std::vector<int> w;
  for (long cur = static_cast<long>(i); parent[static_cast<std::size_t>(cur)] >= 0;
       cur = parent[static_cast<std::size_t>(cur)]) {
    w.push_back(via[static_cast<std::size_t>(cur)]);
  }
  return w;
}

template <class G>
GroupBall<G> group_ball(const std::vector<G>& gens, const BallLimits& limits) {
  if (gens.empty()) throw Error(Errc::InvariantViolation, "group_ball needs at least one generator");
  constexpr int kd = GroupTraits<G>::key_dim;
  GroupBall<G> ball;
  ball.generators = gens;
  for (const G& g : gens) ball.generators.push_back(g.inverse());

  ApproxIndex index(kd, limits.tol);
  std::array<double, kd> key{};
  const G id = identity_of<G>();
  GroupTraits<G>::key(id, key.data());
  index.insert(key.data());
  ball.elements.push_back(id);
  ball.parent.push_back(-1);
  ball.via.push_back(-1);
  ball.size_at_depth.push_back(1);

  const std::size_t ng = ball.generators.size();
  std::vector<std::size_t> frontier{0};
  bool truncated = ball.elements.size() >= limits.max_size;
  for (int d = 1; d <= limits.max_depth && !truncated; ++d) {
    const std::size_t nc = frontier.size() * ng;
    std::vector<G> cand(nc);
    std::vector<double> keys(nc * kd);
    const bool project = d % 64 == 0;
    parallel_for(nc, [&](std::size_t b, std::size_t e) {
      for (std::size_t c = b; c < e; ++c) {
        G p = ball.generators[c % ng] * ball.elements[frontier[c / ng]];
        if (project) p = reortho(p);
        GroupTraits<G>::key(p, keys.data() + c * kd);
        cand[c] = std::move(p);
      }
    });
    std::vector<std::size_t> next;
    for (std::size_t c = 0; c < nc; ++c) {
      if (ball.elements.size() >= limits.max_size) {
        truncated = true;
        break;
      }
      const auto [idx, inserted] = index.find_or_insert(keys.data() + c * kd);
      if (!inserted) continue;
      ball.elements.push_back(std::move(cand[c]));
      ball.parent.push_back(static_cast<long>(frontier[c / ng]));
      ball.via.push_back(static_cast<int>(c % ng));
      next.push_back(static_cast<std::size_t>(idx));
    }
    if (next.empty() && !truncated) {
      ball.saturated = true;
      break;
    }
    ball.depth = d;
    ball.size_at_depth.push_back(ball.elements.size());
    frontier = std::move(next);
  }
  const auto& s = ball.size_at_depth;
  if (!ball.saturated && s.size() >= 4) {
    const std::size_t n = s.size();
    const auto inc = [&](std::size_t i) { return static_cast<double>(s[i] - s[i - 1]); };
    ball.superlinear_growth = inc(n - 1) > inc(n - 2) && inc(n - 2) > inc(n - 3);
    if (truncated) ball.superlinear_growth = inc(n - 2) > inc(n - 3);
  }
  return ball;
}

// ------------------------------------------------------------------ probes

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

/// Halton points in [0,1)^dim shifted modulo 1 by a seeded random vector.
std::vector<std::vector<double>> shifted_halton(int count, int dim, std::uint64_t seed) {
  static constexpr std::array<std::uint64_t, 8> primes{2, 3, 5, 7, 11, 13, 17, 19};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shift(static_cast<std::size_t>(dim));
  for (auto& s : shift) s = unif(rng);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dim)));
  for (int i = 0; i < count; ++i) {
    for (int k = 0; k < dim; ++k) {
      double u = radical_inverse(static_cast<std::uint64_t>(i) + 1, primes[static_cast<std::size_t>(k)]) +
                 shift[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = u - std::floor(u);
    }
  }
  return out;
}

Eigen::Vector4d uniform_quaternion(double u1, double u2, double u3) {
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double t2 = 2.0 * std::numbers::pi * u2, t3 = 2.0 * std::numbers::pi * u3;
  return {b * std::cos(t3), a * std::sin(t2), a * std::cos(t2), b * std::sin(t3)};
}

Eigen::Vector4d qmul(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

Eigen::Vector3d sphere_point(double u, double v) {
  const double z = 1.0 - 2.0 * u;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double t = 2.0 * std::numbers::pi * v;
  return {r * std::cos(t), r * std::sin(t), z};
}

}  // namespace

template <>
std::vector<Rot3> group_probes<Rot3>(int count, std::uint64_t seed) {
  std::vector<Rot3> out;
  for (const auto& u : shifted_halton(count, 3, seed)) out.push_back(rotation_of_quaternion(uniform_quaternion(u[0], u[1], u[2])));
  return out;
}

template <>
std::vector<SU2> group_probes<SU2>(int count, std::uint64_t seed) {
  std::vector<SU2> out;
  for (const auto& u : shifted_halton(count, 3, seed)) {
    const Eigen::Vector4d q = uniform_quaternion(u[0], u[1], u[2]);
    out.push_back(SU2::unchecked({q[0], q[1]}, {q[2], q[3]}));
  }
  return out;
}

template <>
std::vector<U2Mat> group_probes<U2Mat>(int count, std::uint64_t seed) {
  std::vector<U2Mat> out;
  for (const auto& u : shifted_halton(count, 4, seed)) {
    const Eigen::Vector4d q = uniform_quaternion(u[0], u[1], u[2]);
    const Eigen::Matrix2cd m = std::polar(1.0, std::numbers::pi * u[3]) * SU2::unchecked({q[0], q[1]}, {q[2], q[3]}).matrix();
    out.push_back(U2Mat::unchecked(m));
  }
  return out;
}

template <>
std::vector<Rot4> group_probes<Rot4>(int count, std::uint64_t seed) {
  std::vector<Rot4> out;
  for (const auto& u : shifted_halton(count, 6, seed)) {
    const Eigen::Vector4d p = uniform_quaternion(u[0], u[1], u[2]);
    Eigen::Vector4d qc = uniform_quaternion(u[3], u[4], u[5]);
    qc.tail<3>() *= -1.0;
    Eigen::Matrix4d m;
    for (int j = 0; j < 4; ++j) m.col(j) = qmul(qmul(p, Eigen::Vector4d::Unit(j)), qc);
    out.push_back(Rot4::unchecked(m));
  }
  return out;
}

double group_distance(const Rot3& a, const Rot3& b) { return so3_distance(a, b); }
double group_distance(const Rot4& a, const Rot4& b) { return frobenius_distance(a, b); }
double group_distance(const SU2& a, const SU2& b) { return frobenius_distance(a, b); }
double group_distance(const U2Mat& a, const U2Mat& b) { return frobenius_distance(a, b); }

namespace {

/// Flat metric coordinates: unit quaternions (score = |dot|, larger is
/// closer) on SO(3), scaled matrix entries (score = -squared distance) otherwise.
template <class G>
struct MetricEmbedding {
  static constexpr int dim = GroupTraits<G>::key_dim;
  static void embed(const G& g, double* out) { GroupTraits<G>::key(g, out); }
  static double score(const double* a, const double* b) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return -s;
  }
  static double distance(double best_score) {
    const double frob2 = -best_score;
    if constexpr (std::is_same_v<G, SU2>) return std::sqrt(frob2);
    else if constexpr (std::is_same_v<G, U2Mat>) return std::sqrt(frob2 / 2.0);
    else return std::sqrt(frob2 / 4.0);
  }
};

template <>
struct MetricEmbedding<Rot3> {
  static constexpr int dim = 4;
  static void embed(const Rot3& g, double* out) {
    const Eigen::Vector4d q = quaternion_of(g);
    for (int i = 0; i < 4; ++i) out[i] = q[i];
  }
  static double score(const double* a, const double* b) {
    return std::abs(a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]);
  }
  static double distance(double best_score) { return 2.0 * std::acos(std::min(1.0, best_score)); }
};

template <class G>
std::vector<double> embed_all(const std::vector<G>& v, std::size_t n) {
  constexpr int d = MetricEmbedding<G>::dim;
  std::vector<double> out(n * d);
  for (std::size_t i = 0; i < n; ++i) MetricEmbedding<G>::embed(v[i], out.data() + i * d);
  return out;
}

template <class G>
void update_best(const std::vector<double>& probes, const std::vector<double>& pts, std::size_t from, std::size_t to,
                 std::vector<double>& best) {
  constexpr int d = MetricEmbedding<G>::dim;
  parallel_for(best.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      double s = best[p];
      const double* q = probes.data() + p * d;
      for (std::size_t i = from; i < to; ++i) s = std::max(s, MetricEmbedding<G>::score(q, pts.data() + i * d));
      best[p] = s;
    }
  });
}

template <class G>
double radius_from(const std::vector<double>& best) {
  const double worst = *std::min_element(best.begin(), best.end());
  return MetricEmbedding<G>::distance(worst);
}

}  // namespace

template <class G>
double covering_radius_group(const GroupBall<G>& ball, int probes, std::uint64_t seed, std::size_t prefix) {
  if (ball.elements.empty()) throw Error(Errc::InvariantViolation, "empty ball");
  const std::size_t n = prefix == 0 ? ball.elements.size() : std::min(prefix, ball.elements.size());
  const std::vector<G> pr = group_probes<G>(probes, seed);
  const auto pe = embed_all(pr, pr.size());
  const auto be = embed_all(ball.elements, n);
  std::vector<double> best(pr.size(), -std::numeric_limits<double>::infinity());
  update_best<G>(pe, be, 0, n, best);
  return radius_from<G>(best);
}

template <class G>
std::vector<double> covering_radius_snapshots(const GroupBall<G>& ball, int probes, std::uint64_t seed) {
  const std::vector<G> pr = group_probes<G>(probes, seed);
  const auto pe = embed_all(pr, pr.size());
  const auto be = embed_all(ball.elements, ball.elements.size());
  std::vector<double> best(pr.size(), -std::numeric_limits<double>::infinity());
  std::vector<double> out;
  std::size_t prev = 0;
  for (std::size_t s : ball.size_at_depth) {
    update_best<G>(pe, be, prev, s, best);
    prev = s;
    out.push_back(radius_from<G>(best));
  }
  return out;
}

#define HOLONOMY_INSTANTIATE_BALL(G)                                                                     \
  template struct GroupBall<G>;                                                                          \
  template GroupBall<G> group_ball<G>(const std::vector<G>&, const BallLimits&);                         \
  template double covering_radius_group<G>(const GroupBall<G>&, int, std::uint64_t, std::size_t);        \
  template std::vector<double> covering_radius_snapshots<G>(const GroupBall<G>&, int, std::uint64_t);

HOLONOMY_INSTANTIATE_BALL(Rot3)
HOLONOMY_INSTANTIATE_BALL(Rot4)
HOLONOMY_INSTANTIATE_BALL(SU2)
HOLONOMY_INSTANTIATE_BALL(U2Mat)

#undef HOLONOMY_INSTANTIATE_BALL

// ------------------------------------------------------------------ orbits

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(n));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = golden * i;
    out.emplace_back(r * std::cos(t), r * std::sin(t), z);
  }
  return out;
}

namespace {

/// BFS of a linear action on products of unit spheres; each point is the
/// concatenation of `factors` unit 3-vectors.
OrbitReport point_orbit(const std::vector<Eigen::MatrixXd>& gens, const Eigen::VectorXd& start, int factors,
                        const OrbitLimits& limits) {
  const int dim = 3 * factors;
  std::vector<Eigen::MatrixXd> acts = gens;
  for (const auto& g : gens) acts.push_back(g.transpose());
  const std::size_t ng = acts.size();

  ApproxIndex index(dim, limits.tol);
  std::vector<double> pts(start.data(), start.data() + dim);
  index.insert(pts.data());
  std::vector<std::size_t> size_at_depth{1};

  OrbitReport rep;
  std::vector<std::size_t> frontier{0};
  bool truncated = limits.max_size <= 1;
  for (int d = 1; d <= limits.max_depth && !truncated; ++d) {
    const std::size_t nc = frontier.size() * ng;
    std::vector<double> cand(nc * static_cast<std::size_t>(dim));
    const bool project = d % 64 == 0;
    parallel_for(nc, [&](std::size_t b, std::size_t e) {
      for (std::size_t c = b; c < e; ++c) {
        const Eigen::Map<const Eigen::VectorXd> x(pts.data() + frontier[c / ng] * static_cast<std::size_t>(dim), dim);
        Eigen::Map<Eigen::VectorXd> y(cand.data() + c * static_cast<std::size_t>(dim), dim);
        y = acts[c % ng] * x;
        if (project) {
          for (int f = 0; f < factors; ++f) y.segment<3>(3 * f).normalize();
        }
      }
    });
    std::vector<std::size_t> next;
    for (std::size_t c = 0; c < nc; ++c) {
      if (index.size() >= limits.max_size) {
        truncated = true;
        break;
      }
      const double* key = cand.data() + c * static_cast<std::size_t>(dim);
      const auto [idx, inserted] = index.find_or_insert(key);
      if (!inserted) continue;
      pts.insert(pts.end(), key, key + dim);
      next.push_back(static_cast<std::size_t>(idx));
    }
    if (next.empty() && !truncated) {
      rep.saturated = true;
      break;
    }
    rep.depth = d;
    size_at_depth.push_back(index.size());
    frontier = std::move(next);
  }

  // Probes: Fibonacci mesh on S^2, shifted Halton pairs on S^2 x S^2.
  std::vector<double> probes;
  if (factors == 1) {
    for (const auto& p : fibonacci_sphere(limits.probes)) probes.insert(probes.end(), {p[0], p[1], p[2]});
  } else {
    for (const auto& u : shifted_halton(limits.probes, 4, limits.seed)) {
      const Eigen::Vector3d a = sphere_point(u[0], u[1]), b = sphere_point(u[2], u[3]);
      probes.insert(probes.end(), {a[0], a[1], a[2], b[0], b[1], b[2]});
    }
  }
  const std::size_t np = probes.size() / static_cast<std::size_t>(dim);
  std::vector<double> best(np, -2.0);
  std::size_t prev = 0;
  for (std::size_t di = 0; di < size_at_depth.size(); ++di) {
    const std::size_t to = size_at_depth[di];
    parallel_for(np, [&](std::size_t b, std::size_t e) {
      for (std::size_t p = b; p < e; ++p) {
        const double* q = probes.data() + p * static_cast<std::size_t>(dim);
        double s = best[p];
        for (std::size_t i = prev; i < to; ++i) {
          const double* x = pts.data() + i * static_cast<std::size_t>(dim);
          double score = 2.0;
          for (int f = 0; f < factors; ++f) {
            score = std::min(score, q[3 * f] * x[3 * f] + q[3 * f + 1] * x[3 * f + 1] + q[3 * f + 2] * x[3 * f + 2]);
          }
          s = std::max(s, score);
        }
        best[p] = s;
      }
    });
    prev = to;
    const double worst = *std::min_element(best.begin(), best.end());
    rep.snapshots.push_back({static_cast<int>(di), to, std::acos(std::clamp(worst, -1.0, 1.0))});
  }
  rep.covering_radius = rep.snapshots.back().covering_radius;

  const std::size_t n = index.size();
  rep.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.points.emplace_back(Eigen::Map<const Eigen::VectorXd>(pts.data() + i * static_cast<std::size_t>(dim), dim));
  }
  std::sort(rep.points.begin(), rep.points.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  for (int f = 0; f < factors; ++f) {
    std::vector<Eigen::Vector3d> proj;
    proj.reserve(n);
    for (const auto& p : rep.points) proj.emplace_back(p.segment<3>(3 * f));
    rep.confinement.push_back(detect_confinement(proj, limits.confinement_tol));
  }
  return rep;
}

void check_unit(const Eigen::Vector3d& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-12) throw Error(Errc::InvariantViolation, std::string(name) + " must be a unit vector");
}

}  // namespace

OrbitReport orbit(const std::vector<Rot3>& gens, const Eigen::Vector3d& omega, const OrbitLimits& limits) {
  check_unit(omega, "omega");
  std::vector<Eigen::MatrixXd> acts;
  for (const auto& g : gens) acts.emplace_back(g.matrix());
  return point_orbit(acts, omega, 1, limits);
}

OrbitReport product_orbit(const std::vector<std::pair<Rot3, Rot3>>& gens, const Eigen::Vector3d& p_plus,
                          const Eigen::Vector3d& p_minus, const OrbitLimits& limits) {
  check_unit(p_plus, "p_plus");
  check_unit(p_minus, "p_minus");
  std::vector<Eigen::MatrixXd> acts;
  for (const auto& [a, b] : gens) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    m.topLeftCorner<3, 3>() = a.matrix();
    m.bottomRightCorner<3, 3>() = b.matrix();
    acts.push_back(m);
  }
  Eigen::VectorXd start(6);
  start << p_plus, p_minus;
  return point_orbit(acts, start, 2, limits);
}

// ------------------------------------------------------------------ confinement

namespace {

std::optional<Plane> plane_through(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  Eigen::Vector3d n = (b - a).cross(c - a);
  if (n.norm() < 1e-9) return std::nullopt;
  n.normalize();
  double off = n.dot(a);
  bool flip = off < 0.0;
  if (std::abs(off) < 1e-12) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(n[i]) > 1e-12) {
        flip = n[i] < 0.0;
        break;
      }
    }
  }
  if (flip) {
    n = -n;
    off = -off;
  }
  return Plane{n, off};
}

double deviation(const Plane& p, const Eigen::Vector3d& x) { return std::abs(p.normal.dot(x) - p.offset); }

/// A plane containing all of pts (which lie on the unit sphere), if any.
std::optional<Plane> fit_plane(const std::vector<Eigen::Vector3d>& pts, double tol) {
  if (pts.empty()) return std::nullopt;
  const Eigen::Vector3d& a = pts.front();
  if (pts.size() == 1) return Plane{a.normalized(), a.norm()};
  std::size_t jb = 0;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    if ((pts[j] - a).norm() > (pts[jb] - a).norm()) jb = j;
  }
  const Eigen::Vector3d& b = pts[jb];
  if ((b - a).norm() <= tol) return Plane{a.normalized(), a.norm()};
  std::size_t kb = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double c = (b - a).cross(pts[k] - a).norm();
    if (c > best) {
      best = c;
      kb = k;
    }
  }
  std::optional<Plane> p = plane_through(a, b, pts[kb]);
  if (!p) {
    // Collinear on a sphere: two distinct points; the bisecting normal works.
    const Eigen::Vector3d n = (a + b).norm() > 1e-12 ? Eigen::Vector3d((a + b).normalized()) : Eigen::Vector3d(a.cross(b).normalized());
    p = Plane{n, n.dot(a)};
  }
  for (const auto& x : pts) {
    if (deviation(*p, x) > tol) return std::nullopt;
  }
  return p;
}

bool same_plane(const Plane& a, const Plane& b) {
  return (a.normal - b.normal).norm() < 1e-9 && std::abs(a.offset - b.offset) < 1e-9;
}

/// Tries to cover pts by p1 plus at most one more plane.
std::optional<std::vector<Plane>> cover_with(const Plane& p1, const std::vector<Eigen::Vector3d>& pts, double tol) {
  std::vector<Eigen::Vector3d> rest;
  for (const auto& x : pts) {
    if (deviation(p1, x) > tol) rest.push_back(x);
  }
  if (rest.empty()) return std::vector<Plane>{p1};
  if (auto p2 = fit_plane(rest, tol)) return std::vector<Plane>{p1, *p2};
  return std::nullopt;
}

}  // namespace

Confinement detect_confinement(const std::vector<Eigen::Vector3d>& points, double tol) {
  if (points.empty()) throw Error(Errc::InvariantViolation, "detect_confinement needs at least one point");
  Confinement out;
  const Eigen::Vector3d& p0 = points.front();
  if (std::all_of(points.begin(), points.end(), [&](const auto& p) { return (p - p0).norm() <= tol; })) {
    out.kind = Confinement::Kind::point;
    return out;
  }
  const std::size_t n = points.size();
  const std::size_t m = std::min<std::size_t>(32, n);
  std::vector<Eigen::Vector3d> sub;
  for (std::size_t i = 0; i < m; ++i) sub.push_back(points[i * n / m]);

  std::vector<Plane> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        auto p = plane_through(sub[i], sub[j], sub[k]);
        if (!p) continue;
        if (std::none_of(candidates.begin(), candidates.end(), [&](const Plane& c) { return same_plane(c, *p); })) {
          candidates.push_back(*p);
        }
      }
    }
  }
  // Too few distinct subsample points for a triple: cover them directly.
  if (candidates.empty()) {
    std::vector<Eigen::Vector3d> distinct;
    for (const auto& p : points) {
      if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& q) { return (p - q).norm() <= tol; })) {
        distinct.push_back(p);
      }
      if (distinct.size() > 2) break;
    }
    if (distinct.size() <= 2) {
      out.kind = Confinement::Kind::circles;
      for (const auto& d : distinct) out.planes.push_back(Plane{d.normalized(), d.norm()});
      return out;
    }
  }
  std::optional<std::vector<Plane>> found;
  for (const Plane& c : candidates) {
    if (!cover_with(c, sub, tol)) continue;
    if ((found = cover_with(c, points, tol))) break;
  }
  if (!found) {
    out.kind = Confinement::Kind::full;
    return out;
  }
  out.kind = Confinement::Kind::circles;
  out.planes = *found;
  for (const auto& x : points) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : out.planes) d = std::min(d, deviation(p, x));
    out.max_deviation = std::max(out.max_deviation, d);
  }
  return out;
}

// ------------------------------------------------------------------ search

std::vector<Rot3> search_alphabet(const std::vector<Rot3>& gens, int max_power) {
  std::vector<Rot3> out;
  for (const auto& g : gens) out.push_back(g);
  for (const auto& g : gens) out.push_back(g.inverse());
  for (int k = 2; k <= max_power; ++k) {
    for (const auto& g : gens) {
      out.push_back(g.pow(k));
      out.push_back(g.pow(-k));
    }
  }
  return out;
}

ApproxResult approximate_element(const std::vector<Rot3>& gens, const Rot3& target, double eps, std::size_t budget,
                                 int max_power) {
  if (!(eps > 0.0)) throw Error(Errc::InvariantViolation, "eps must be positive");
  const std::vector<Rot3> alphabet = search_alphabet(gens, max_power);
  std::vector<Eigen::Vector4d> letters;
  for (const auto& a : alphabet) letters.push_back(quaternion_of(a));

  struct Node {
    Eigen::Vector4d q;
    long parent;
    int letter;
  };
  std::vector<Node> nodes;
  const auto word_of = [&](long i) {
    std::vector<int> w;
    for (; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
      w.push_back(nodes[static_cast<std::size_t>(i)].letter);
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  const auto angle = [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    return 2.0 * std::acos(std::min(1.0, std::abs(a.dot(b))));
  };
  const auto conj = [](const Eigen::Vector4d& q) { return Eigen::Vector4d(q[0], -q[1], -q[2], -q[3]); };

  // Grid on unit quaternions: cell = chord length of an eps rotation, so the
  // 3^4 neighborhood of a query cell holds every element within eps of it.
  const double cell = 2.0 * std::sin(eps / 4.0);
  std::unordered_map<std::uint64_t, std::vector<long>> grid;
  const auto cell_of = [&](const Eigen::Vector4d& q) {
    std::array<long long, 4> c{};
    for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(k)] = static_cast<long long>(std::floor(q[k] / cell));
    return c;
  };
  const auto hash = [](const std::array<long long, 4>& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (long long v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
    return h;
  };
  const auto nearby = [&](const Eigen::Vector4d& r) -> long {
    for (const Eigen::Vector4d& s : {r, Eigen::Vector4d(-r)}) {
      const auto c = cell_of(s);
      for (int m = 0; m < 81; ++m) {
        std::array<long long, 4> d = c;
        for (int k = 0, mm = m; k < 4; ++k, mm /= 3) d[static_cast<std::size_t>(k)] += mm % 3 - 1;
        const auto it = grid.find(hash(d));
        if (it == grid.end()) continue;
        for (long j : it->second) {
          if (angle(nodes[static_cast<std::size_t>(j)].q, r) < eps) return j;
        }
      }
    }
    return -1;
  };

  const Eigen::Vector4d tq = quaternion_of(target);
  ApproxResult res;
  res.distance = std::numeric_limits<double>::infinity();
  const auto finish = [&](std::vector<int> w, double d) {
    res.found = true;
    res.word = std::move(w);
    res.distance = d;
    return res;
  };

  ApproxIndex seen(4, std::min(1e-9, eps * 1e-3));
  std::size_t head = 0;
  const auto add = [&](const Eigen::Vector4d& q, long parent, int letter) -> std::optional<ApproxResult> {
    Eigen::Vector4d c = q.normalized();
    if (c[0] < 0.0) c = -c;
    if (seen.find(c.data()) >= 0) return std::nullopt;
    seen.insert(c.data());
    nodes.push_back({c, parent, letter});
    ++res.expansions;
    const long i = static_cast<long>(nodes.size() - 1);
    grid[hash(cell_of(c))].push_back(i);
    const double d = angle(c, tq);
    res.distance = std::min(res.distance, d);
    if (d < eps) return finish(word_of(i), d);
    // Element as the left factor of target, then as the right factor.
    if (long j = nearby(qmul(conj(c), tq)); j >= 0) {
      auto w = word_of(i);
      const auto r = word_of(j);
      w.insert(w.end(), r.begin(), r.end());
      return finish(std::move(w), angle(qmul(c, nodes[static_cast<std::size_t>(j)].q), tq));
    }
    if (long j = nearby(qmul(tq, conj(c))); j >= 0) {
      auto w = word_of(j);
      const auto r = word_of(i);
      w.insert(w.end(), r.begin(), r.end());
      return finish(std::move(w), angle(qmul(nodes[static_cast<std::size_t>(j)].q, c), tq));
    }
    return std::nullopt;
  };

  if (auto r = add(Eigen::Vector4d(1.0, 0.0, 0.0, 0.0), -1, -1)) return *r;
  while (head < nodes.size() && res.expansions < budget) {
    const Eigen::Vector4d q = nodes[head].q;
    const long parent = static_cast<long>(head++);
    for (std::size_t l = 0; l < letters.size() && res.expansions < budget; ++l) {
      if (auto r = add(qmul(q, letters[l]), parent, static_cast<int>(l))) return *r;
    }
  }
  return res;
}

}  // namespace holonomy
