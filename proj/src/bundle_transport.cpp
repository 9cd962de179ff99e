#include "holonomy/bundle_transport.hpp"

#include "holonomy/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace holonomy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRoundTripTol = 1e-10;

void check_skew(const Eigen::MatrixXcd& p, double tol, const char* name) {
  if ((p + p.adjoint()).norm() > tol) {
    throw Error(Errc::InvariantViolation, std::string(name) + " is not skew-Hermitian");
  }
}

}  // namespace

Connection Connection::real4(const Eigen::Matrix4d& p1, const Eigen::Matrix4d& p2, double tol) {
  check_skew(p1.cast<cplx>(), tol, "p1");
  check_skew(p2.cast<cplx>(), tol, "p2");
  Connection c;
  c.fiber = Fiber::real4;
  c.p1r = p1;
  c.p2r = p2;
  return c;
}

Connection Connection::complex2(const Eigen::Matrix2cd& p1, const Eigen::Matrix2cd& p2, bool su2, double tol) {
  check_skew(p1, tol, "p1");
  check_skew(p2, tol, "p2");
  if (su2 && (std::abs(p1.trace()) > tol || std::abs(p2.trace()) > tol)) {
    throw Error(Errc::InvariantViolation, "su(2) connection must be trace-free");
  }
  Connection c;
  c.fiber = Fiber::complex2;
  c.p1c = p1;
  c.p2c = p2;
  c.su2 = su2;
  return c;
}

Eigen::MatrixXcd Connection::p(int k) const {
  if (fiber == Fiber::real4) return (k == 1 ? p1r : p2r).cast<cplx>();
  return k == 1 ? p1c : p2c;
}

NPCWord NPCWord::parse(const std::string& text) {
  NPCWord w;
  if (text.find_first_not_of(" \t") == std::string::npos) return w;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    const std::string t = b == std::string::npos ? std::string() : token.substr(b, e - b + 1);
    const auto fail = [&] { throw Error(Errc::ParseError, "bad word token '" + t + "'"); };
    if (t.size() < 3 || (t[0] != 'x' && t[0] != 'y') || t[1] != ':') fail();
    std::size_t used = 0;
    long long m = 0;
    try {
      m = std::stoll(t.substr(2), &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != t.size() - 2 || m == 0) fail();
    w.steps.push_back({t[0] == 'x' ? Axis::x : Axis::y, m});
  }
  if (!text.empty() && text.back() == ',') throw Error(Errc::ParseError, "bad word token ''");
  return w;
}

std::string NPCWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ",";
    out += steps[i].axis == Axis::x ? "x:" : "y:";
    out += std::to_string(steps[i].winding);
  }
  return out;
}

NPCWord NPCWord::operator+(const NPCWord& o) const {
  NPCWord w = *this;
  w.steps.insert(w.steps.end(), o.steps.begin(), o.steps.end());
  return w;
}

Eigen::Matrix4d log_so4(const Rot4& a) {
  Eigen::RealSchur<Eigen::Matrix4d> schur(a.matrix());
  const Eigen::Matrix4d& t = schur.matrixT();
  const Eigen::Matrix4d& u = schur.matrixU();
  Eigen::Matrix4d l = Eigen::Matrix4d::Zero();
  std::vector<int> minus_ones;
  for (int i = 0; i < 4;) {
    if (i < 3 && std::abs(t(i + 1, i)) > 1e-14) {
      const double th = std::atan2((t(i + 1, i) - t(i, i + 1)) / 2.0, (t(i, i) + t(i + 1, i + 1)) / 2.0);
      l(i, i + 1) = -th;
      l(i + 1, i) = th;
      i += 2;
    } else {
      if (t(i, i) < 0.0) minus_ones.push_back(i);
      ++i;
    }
  }
  if (minus_ones.size() % 2 != 0) throw Error(Errc::LogBranchFailure, "odd number of -1 eigenvalues");
  for (std::size_t k = 0; k < minus_ones.size(); k += 2) {
    const int i = minus_ones[k], j = minus_ones[k + 1];
    l(i, j) = -std::numbers::pi;
    l(j, i) = std::numbers::pi;
  }
  Eigen::Matrix4d x = u * l * u.transpose();
  x = (x - x.transpose()) / 2.0;
  if ((x.exp() - a.matrix()).norm() > kRoundTripTol) {
    throw Error(Errc::LogBranchFailure, "SO(4) logarithm does not round-trip");
  }
  return x;
}

Eigen::Matrix2cd log_su2(const SU2& a) {
  const double c = std::clamp(a.alpha().real(), -1.0, 1.0);
  const Eigen::Matrix2cd m = a.matrix();
  // Traceless anti-Hermitian part: (m - m^dagger) / 2 = sin(t) * (unit pure quaternion).
  const Eigen::Matrix2cd k = (m - m.adjoint()) / 2.0;
  const double s = std::sqrt(std::max(0.0, k.squaredNorm() / 2.0));
  const double t = std::atan2(s, c);
  Eigen::Matrix2cd x;
  if (s > 1e-300) {
    x = (t / s) * k;
  } else if (c > 0.0) {
    x = Eigen::Matrix2cd::Zero();
  } else {
    x << cplx(0.0, std::numbers::pi), 0.0, 0.0, cplx(0.0, -std::numbers::pi);
  }
  if ((x.exp() - m).norm() > kRoundTripTol) throw Error(Errc::LogBranchFailure, "SU(2) logarithm does not round-trip");
  return x;
}

Eigen::Matrix2cd log_u2(const U2Mat& a) {
  double arg = std::arg(a.matrix().determinant());
  if (arg < 0.0) arg += kTwoPi;
  const double gamma = arg / 2.0;
  const Eigen::Matrix2cd su = std::polar(1.0, -gamma) * a.matrix();
  const SU2 s = SU2::unchecked(su(0, 0), su(1, 0));
  const Eigen::Matrix2cd x = cplx(0.0, gamma) * Eigen::Matrix2cd::Identity() + log_su2(s);
  if ((x.exp() - a.matrix()).norm() > kRoundTripTol) throw Error(Errc::LogBranchFailure, "U(2) logarithm does not round-trip");
  return x;
}

Connection connection_from_gens(const Rot4& a1, const Rot4& a2) {
  return Connection::real4(-log_so4(a1) / kTwoPi, -log_so4(a2) / kTwoPi, 1e-10);
}

Connection connection_from_gens(const SU2& a1, const SU2& a2) {
  return Connection::complex2(-log_su2(a1) / kTwoPi, -log_su2(a2) / kTwoPi, true, 1e-10);
}

Connection connection_from_gens(const U2Mat& a1, const U2Mat& a2) {
  return Connection::complex2(-log_u2(a1) / kTwoPi, -log_u2(a2) / kTwoPi, false, 1e-10);
}

Eigen::MatrixXcd holonomy_matrix(const Connection& conn, Axis axis) {
  const int k = axis == Axis::x ? 1 : 2;
  if (conn.fiber == Fiber::real4) {
    const Eigen::Matrix4d p = k == 1 ? conn.p1r : conn.p2r;
    return Eigen::Matrix4d((-kTwoPi * p).exp()).cast<cplx>();
  }
  const Eigen::Matrix2cd p = k == 1 ? conn.p1c : conn.p2c;
  return Eigen::Matrix2cd((-kTwoPi * p).exp());
}

HolonomyGens<Rot4> holonomy_gens_so4(const Connection& conn) {
  if (conn.fiber != Fiber::real4) throw Error(Errc::WrongFiber, "expected a real4 connection");
  return {Rot4::unchecked(holonomy_matrix(conn, Axis::x).real()), Rot4::unchecked(holonomy_matrix(conn, Axis::y).real())};
}

HolonomyGens<U2Mat> holonomy_gens_u2(const Connection& conn) {
  if (conn.fiber != Fiber::complex2) throw Error(Errc::WrongFiber, "expected a complex2 connection");
  return {U2Mat::unchecked(holonomy_matrix(conn, Axis::x)), U2Mat::unchecked(holonomy_matrix(conn, Axis::y))};
}

Eigen::MatrixXcd word_matrix(const Connection& conn, const NPCWord& word) {
  const Eigen::MatrixXcd ax = holonomy_matrix(conn, Axis::x);
  const Eigen::MatrixXcd ay = holonomy_matrix(conn, Axis::y);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(conn.dim(), conn.dim());
  for (const Step& s : word.steps) {
    const Eigen::MatrixXcd& a = s.axis == Axis::x ? ax : ay;
    const Eigen::MatrixXcd g = s.winding > 0 ? a : Eigen::MatrixXcd(a.adjoint());
    for (long long i = 0; i < std::abs(s.winding); ++i) m = g * m;
  }
  return m;
}

Eigen::VectorXcd transport(const Connection& conn, const NPCWord& word, const Eigen::VectorXcd& v) {
  if (v.size() != conn.dim()) {
    throw Error(Errc::DimensionMismatch, "vector has " + std::to_string(v.size()) + " entries, fiber has " +
                                             std::to_string(conn.dim()));
  }
  const Eigen::MatrixXcd ax = holonomy_matrix(conn, Axis::x);
  const Eigen::MatrixXcd ay = holonomy_matrix(conn, Axis::y);
  Eigen::VectorXcd out = v;
  for (const Step& s : word.steps) {
    const Eigen::MatrixXcd& a = s.axis == Axis::x ? ax : ay;
    const Eigen::MatrixXcd g = s.winding > 0 ? a : Eigen::MatrixXcd(a.adjoint());
    for (long long i = 0; i < std::abs(s.winding); ++i) out = g * out;
  }
  return out;
}

Eigen::VectorXd transport(const Connection& conn, const NPCWord& word, const Eigen::VectorXd& v) {
  if (conn.fiber != Fiber::real4) throw Error(Errc::WrongFiber, "real vectors need a real4 connection");
  return transport(conn, word, Eigen::VectorXcd(v.cast<cplx>())).real();
}

Eigen::VectorXcd transport_ode_oracle(const Connection& conn, const NPCWord& word, const Eigen::VectorXcd& v,
                                      double step) {
  if (!(step > 0.0)) throw Error(Errc::InvariantViolation, "step must be positive");
  if (v.size() != conn.dim()) throw Error(Errc::DimensionMismatch, "vector size does not match the fiber");
  Eigen::VectorXcd xi = v;
  for (const Step& s : word.steps) {
    const double sign = s.winding > 0 ? 1.0 : -1.0;
    const Eigen::MatrixXcd f = -sign * conn.p(s.axis == Axis::x ? 1 : 2);
    const double length = kTwoPi * static_cast<double>(std::abs(s.winding));
    const long long n = static_cast<long long>(std::ceil(length / step));
    const double h = length / static_cast<double>(n);
    for (long long i = 0; i < n; ++i) {
      const Eigen::VectorXcd k1 = f * xi;
      const Eigen::VectorXcd k2 = f * (xi + 0.5 * h * k1);
      const Eigen::VectorXcd k3 = f * (xi + 0.5 * h * k2);
      const Eigen::VectorXcd k4 = f * (xi + h * k3);
      xi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return xi;
}

std::pair<HolonomyGens<Rot3>, HolonomyGens<Rot3>> lambda2_gens(const Connection& conn) {
  if (conn.fiber != Fiber::real4) throw Error(Errc::WrongFiber, "Lambda^2 split needs a real4 connection");
  const HolonomyGens<Rot4> a = holonomy_gens_so4(conn);
  const auto [p1, m1] = so4_to_so3_pair(a.a1);
  const auto [p2, m2] = so4_to_so3_pair(a.a2);
  return {{p1, p2}, {m1, m2}};
}

}  // namespace holonomy
