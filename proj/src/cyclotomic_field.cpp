#include "holonomy/cyclotomic_field.hpp"

#include "holonomy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace holonomy {

namespace {

std::size_t field_degree(int n) { return static_cast<std::size_t>(euler_phi(n)); }

void require_same(const CycloElem& a, const CycloElem& b) {
  if (a.order() != b.order()) throw Error(Errc::DimensionMismatch, "cyclotomic orders differ");
}

Rational coeff_at(const std::vector<Rational>& c, std::size_t i) { return i < c.size() ? c[i] : Rational(0); }

long long half_turn_index(int n, const Rational& r) {
  // pi * r = 2 pi k / n
  const Rational k = Rational(n) * r / Rational(2);
  if (!k.is_integer()) throw Error(Errc::InvariantViolation, "angle is not a multiple of 2 pi / N");
  return static_cast<long long>(k.num());
}

}  // namespace

CycloElem::CycloElem(int n, const Rational& r) : n_(n), c_(field_degree(n)) {
  c_[0] = r;
}

CycloElem CycloElem::reduce(int n, std::vector<Rational> raw) {
  std::vector<Rational> folded(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < raw.size(); ++i) folded[i % static_cast<std::size_t>(n)] += raw[i];
  const RatPoly rem = divmod(RatPoly(std::move(folded)), cyclotomic(n)).remainder;
  std::vector<Rational> c = rem.coeffs();
  c.resize(field_degree(n));
  return CycloElem(n, std::move(c));
}

CycloElem CycloElem::zeta_pow(int n, long long k) {
  long long e = k % n;
  if (e < 0) e += n;
  std::vector<Rational> raw(static_cast<std::size_t>(e) + 1);
  raw.back() = Rational(1);
  return reduce(n, std::move(raw));
}

CycloElem CycloElem::cos_pi(int n, const Rational& r) {
  const long long k = half_turn_index(n, r);
  return Rational(1, 2) * (zeta_pow(n, k) + zeta_pow(n, -k));
}

CycloElem CycloElem::sin_pi(int n, const Rational& r) {
  if (n % 4 != 0) throw Error(Errc::InvariantViolation, "sine needs i in the field");
  const long long k = half_turn_index(n, r);
  return Rational(1, 2) * ((zeta_pow(n, k) - zeta_pow(n, -k)) * zeta_pow(n, 3LL * n / 4));
}

bool CycloElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool CycloElem::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return false;
  }
  return true;
}

CycloElem CycloElem::conj() const {
  std::vector<Rational> raw(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    raw[(static_cast<std::size_t>(n_) - i) % static_cast<std::size_t>(n_)] += c_[i];
  }
  return reduce(n_, std::move(raw));
}

std::complex<double> CycloElem::to_complex() const {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    acc += c_[i].to_double() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / n_);
  }
  return acc;
}

CycloElem CycloElem::operator-() const {
  std::vector<Rational> c = c_;
  for (auto& x : c) x = -x;
  return CycloElem(n_, std::move(c));
}

CycloElem operator+(const CycloElem& a, const CycloElem& b) {
  require_same(a, b);
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff_at(a.c_, i) + coeff_at(b.c_, i);
  return CycloElem(a.n_, std::move(c));
}

CycloElem operator-(const CycloElem& a, const CycloElem& b) { return a + (-b); }

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return CycloElem(a.n_, Rational(0));
  std::vector<Rational> raw(a.c_.size() + b.c_.size());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (!b.c_[j].is_zero()) raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return CycloElem::reduce(a.n_, std::move(raw));
}

CycloElem operator*(const Rational& k, const CycloElem& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x *= k;
  return CycloElem(a.n_, std::move(c));
}

bool operator==(const CycloElem& a, const CycloElem& b) {
  if (a.n_ != b.n_) return false;
  const std::size_t len = std::max(a.c_.size(), b.c_.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (!(coeff_at(a.c_, i) == coeff_at(b.c_, i))) return false;
  }
  return true;
}

RatPoly min_poly(const CycloElem& x) {
  const std::size_t dim = field_degree(x.order());
  struct Row {
    std::vector<Rational> v;     // reduced power-basis vector
    std::vector<Rational> comb;  // coefficients on 1, x, x^2, ...
    std::size_t pivot;
  };
  std::vector<Row> basis;
  CycloElem power(x.order(), Rational(1));
  for (std::size_t k = 0; k <= dim; ++k) {
    std::vector<Rational> v = power.coeffs();
    v.resize(dim);
    std::vector<Rational> comb(k + 1);
    comb[k] = Rational(1);
    for (const Row& row : basis) {
      const Rational f = v[row.pivot];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < dim; ++i) v[i] -= f * row.v[i];
      for (std::size_t i = 0; i < row.comb.size(); ++i) comb[i] -= f * row.comb[i];
    }
    std::size_t pivot = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!v[i].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == dim) return RatPoly(std::move(comb));
    const Rational inv = Rational(1) / v[pivot];
    for (auto& e : v) e *= inv;
    for (auto& e : comb) e *= inv;
    for (Row& row : basis) {
      const Rational f = row.v[pivot];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < dim; ++i) row.v[i] -= f * v[i];
      row.comb.resize(std::max(row.comb.size(), comb.size()));
      for (std::size_t i = 0; i < comb.size(); ++i) row.comb[i] -= f * comb[i];
    }
    basis.push_back({std::move(v), std::move(comb), pivot});
    power = power * x;
  }
  throw Error(Errc::InvariantViolation, "no linear dependence found");
}

int common_cyclotomic_order(const std::vector<Rational>& angles_over_pi) {
  long long n = 4;
  for (const Rational& r : angles_over_pi) {
    const long long q = static_cast<long long>(r.den());
    n = std::lcm(n, 2 * q);
  }
  return static_cast<int>(n);
}

CycloMat3 CycloMat3::identity(int n) {
  CycloMat3 m;
  m.n_ = n;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = CycloElem(n, Rational(i == j ? 1 : 0));
  }
  return m;
}

CycloMat3 CycloMat3::operator*(const CycloMat3& o) const {
  CycloMat3 out;
  out.n_ = n_;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CycloElem acc(n_, Rational(0));
      for (int k = 0; k < 3; ++k) acc = acc + (*this)(i, k) * o(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

CycloMat3 CycloMat3::transpose() const {
  CycloMat3 out;
  out.n_ = n_;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = (*this)(j, i);
  }
  return out;
}

CycloMat3 CycloMat3::pow(long long k) const {
  CycloMat3 base = k < 0 ? transpose() : *this;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  CycloMat3 out = identity(n_);
  while (e > 0) {
    if (e & 1ULL) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

CycloElem CycloMat3::trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }

Eigen::Matrix3d CycloMat3::to_double() const {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j).to_complex().real();
  }
  return m;
}

CycloMat3 exact_c_theta(int n, const Rational& theta_over_pi) {
  const CycloElem c = CycloElem::cos_pi(n, theta_over_pi);
  const CycloElem s = CycloElem::sin_pi(n, theta_over_pi);
  CycloMat3 m = CycloMat3::identity(n);
  m(1, 1) = c;
  m(1, 2) = -s;
  m(2, 1) = s;
  m(2, 2) = c;
  return m;
}

CycloMat3 exact_v_phi_gamma(int n, const Rational& phi_over_pi, const Rational& gamma_over_pi) {
  const CycloElem cp = CycloElem::cos_pi(n, phi_over_pi), sp = CycloElem::sin_pi(n, phi_over_pi);
  const CycloElem cg = CycloElem::cos_pi(n, gamma_over_pi), sg = CycloElem::sin_pi(n, gamma_over_pi);
  const CycloElem one(n, Rational(1));
  CycloMat3 m = CycloMat3::identity(n);
  m(0, 0) = cp;
  m(0, 1) = -(sp * cg);
  m(0, 2) = -(sp * sg);
  m(1, 0) = sp * cg;
  m(1, 1) = sg * sg + cp * cg * cg;
  m(1, 2) = (cp - one) * cg * sg;
  m(2, 0) = sp * sg;
  m(2, 1) = (cp - one) * cg * sg;
  m(2, 2) = cg * cg + cp * sg * sg;
  return m;
}

RatPoly trace_min_poly(const CycloMat3& r) { return min_poly(r.trace()); }

}  // namespace holonomy
