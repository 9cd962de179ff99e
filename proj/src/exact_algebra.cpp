#include "holonomy/exact_algebra.hpp"

#include "holonomy/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace holonomy {

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& n, const BigInt& d) {
  if (d == 0) throw Error(Errc::InvariantViolation, "zero denominator");
  v_ = d < 0 ? boost::multiprecision::cpp_rational(-n, -d) : boost::multiprecision::cpp_rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::InvariantViolation, "division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return num().str();
  return num().str() + "/" + den().str();
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(int degree, Rational c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = std::move(c);
  return RatPoly(std::move(v));
}

RatPoly RatPoly::from_ints(const std::vector<long long>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.emplace_back(c);
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational RatPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(i)];
}

Rational RatPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

bool RatPoly::is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

bool RatPoly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_integer(); });
}

bool RatPoly::is_palindromic() const {
  const int n = degree();
  for (int i = 0; i <= n / 2; ++i) {
    if (!(c_[static_cast<std::size_t>(i)] == c_[static_cast<std::size_t>(n - i)])) return false;
  }
  return true;
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return *this;
  const Rational lead = c_.back();
  std::vector<Rational> v = c_;
  for (auto& x : v) x /= lead;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long long>(i));
  return RatPoly(std::move(v));
}

RatPoly RatPoly::shifted(const Rational& c) const {
  // Horner in polynomial arithmetic: p(x + c).
  RatPoly out;
  const RatPoly lin({c, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * lin + RatPoly({*it});
  return out;
}

RatPoly RatPoly::scaled(const Rational& c) const {
  std::vector<Rational> v = c_;
  Rational p(1);
  for (auto& x : v) {
    x *= p;
    p *= c;
  }
  return RatPoly(std::move(v));
}

double RatPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

std::complex<double> RatPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_double();
  return acc;
}

Rational RatPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::complex<double>> RatPoly::roots() const {
  const int n = degree();
  if (n < 1) return {};
  const RatPoly m = monic();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -m.coeff(i).to_double();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  // Newton polish against the exact coefficients.
  const RatPoly dm = m.derivative();
  for (auto& z : out) {
    for (int it = 0; it < 3; ++it) {
      const auto d = dm.eval(z);
      if (std::abs(d) < 1e-300) break;
      z -= m.eval(z) / d;
    }
  }
  return out;
}

std::string RatPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (i == 0 || !unit) os << (mag.is_integer() ? mag.to_string() : "(" + mag.to_string() + ")");
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(v));
}

RatPoly operator*(const Rational& k, const RatPoly& a) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= k;
  return RatPoly(std::move(v));
}

PolyDivision divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvariantViolation, "polynomial division by zero");
  if (a.degree() < b.degree()) return {RatPoly(), a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational lead = b.leading();
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeff(j);
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() < 1) return p;
  const RatPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

// ---------------------------------------------------------------- QuadExt

namespace {

long long squarefree_split(long long d, long long& square_root_part) {
  square_root_part = 1;
  long long rest = d;
  for (long long f = 2; f * f <= rest; ++f) {
    while (rest % (f * f) == 0) {
      rest /= f * f;
      square_root_part *= f;
    }
  }
  return rest;
}

}  // namespace

QuadExt::QuadExt(Rational a, Rational b, long long d) {
  if (d <= 0) throw Error(Errc::InvariantViolation, "QuadExt radicand must be positive");
  long long root = 1;
  const long long sf = squarefree_split(d, root);
  *this = make(std::move(a), b * Rational(root), sf);
}

QuadExt QuadExt::make(Rational a, Rational b, long long d) {
  QuadExt q;
  q.a_ = std::move(a);
  if (d == 1) {
    q.a_ += b;
    b = Rational(0);
  }
  if (b.is_zero()) {
    q.d_ = 1;
  } else {
    q.b_ = std::move(b);
    q.d_ = d;
  }
  return q;
}

long long QuadExt::common_d(const QuadExt& x, const QuadExt& y) {
  if (x.is_rational()) return y.d_;
  if (y.is_rational() || x.d_ == y.d_) return x.d_;
  throw Error(Errc::TraceNotRepresentable,
              "sqrt(" + std::to_string(x.d_) + ") and sqrt(" + std::to_string(y.d_) + ") do not share a field");
}

double QuadExt::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
}

int QuadExt::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb != 0 ? sb : sa;
  // a and b*sqrt(d) have opposite signs: compare a^2 with b^2 d.
  const Rational a2 = a_ * a_;
  const Rational b2d = b_ * b_ * Rational(d_);
  if (a2 == b2d) return 0;
  return a2 > b2d ? sa : sb;
}

std::string QuadExt::to_string() const {
  if (is_rational()) return a_.to_string();
  std::string s;
  if (!a_.is_zero()) s = a_.to_string() + (b_.sign() < 0 ? " - " : " + ");
  else if (b_.sign() < 0) s = "-";
  const Rational mag = b_.sign() < 0 ? -b_ : b_;
  if (!(mag == Rational(1))) s += "(" + mag.to_string() + ")*";
  return s + "sqrt(" + std::to_string(d_) + ")";
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  const long long d = QuadExt::common_d(x, y);
  return QuadExt::make(x.a_ + y.a_, x.b_ + y.b_, d);
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  const long long d = QuadExt::common_d(x, y);
  return QuadExt::make(x.a_ - y.a_, x.b_ - y.b_, d);
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  const long long d = QuadExt::common_d(x, y);
  return QuadExt::make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
  const Rational n = y.norm();
  if (n.is_zero()) throw Error(Errc::InvariantViolation, "QuadExt division by zero");
  const QuadExt num = x * y.conj();
  return QuadExt::make(num.a_ / n, num.b_ / n, num.d_);
}

// ---------------------------------------------------------------- AngleSpec

AngleSpec AngleSpec::rational_pi(Rational p_over_q) {
  AngleSpec a;
  a.kind_ = Kind::rational_pi;
  a.over_pi_ = QuadExt(std::move(p_over_q));
  a.radians_ = a.over_pi_.to_double() * std::numbers::pi;
  return a;
}

AngleSpec AngleSpec::symbolic_quad(QuadExt multiple_of_pi) {
  if (multiple_of_pi.is_rational()) return rational_pi(multiple_of_pi.a());
  AngleSpec a;
  a.kind_ = Kind::symbolic_quad;
  a.over_pi_ = std::move(multiple_of_pi);
  a.radians_ = a.over_pi_.to_double() * std::numbers::pi;
  return a;
}

AngleSpec AngleSpec::numeric(double radians) {
  if (!std::isfinite(radians)) throw Error(Errc::InvariantViolation, "numeric angle must be finite");
  AngleSpec a;
  a.kind_ = Kind::numeric;
  a.radians_ = radians;
  return a;
}

double AngleSpec::radians() const { return radians_; }

AngleSpec AngleSpec::halved() const {
  if (kind_ == Kind::numeric) return numeric(radians_ / 2.0);
  return symbolic_quad(over_pi_ * QuadExt(Rational(1, 2)));
}

std::string AngleSpec::to_string() const {
  switch (kind_) {
    case Kind::rational_pi: return "pi*" + over_pi_.a().to_string();
    case Kind::symbolic_quad: return "pi*(" + over_pi_.to_string() + ")";
    case Kind::numeric: {
      std::ostringstream os;
      os.precision(17);
      os << radians_;
      return os.str();
    }
  }
  return {};
}

// ---------------------------------------------------------------- cyclotomic

long long euler_phi(long long n) {
  long long result = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

RatPoly cyclotomic(int n) {
  if (n < 1) throw Error(Errc::InvariantViolation, "cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, RatPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  RatPoly p = RatPoly::monomial(n) - RatPoly::monomial(0);
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divmod(p, cyclotomic(d)).quotient;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, p);
  return p;
}

RootOfUnityResult is_root_of_unity(const RatPoly& f) {
  if (f.degree() < 1) return {RootOfUnityResult::Status::not_applicable, 0};
  if (!f.is_monic()) throw Error(Errc::NotMonic, "is_root_of_unity requires a monic polynomial");
  if (!f.is_integral()) return {RootOfUnityResult::Status::no, 0};
  const long long deg = f.degree();
  // phi(n) >= sqrt(n / 2), so phi(n) = deg forces n <= 2 deg^2.
  const long long bound = std::max<long long>(2, 2 * deg * deg);
  for (long long n = 1; n <= bound; ++n) {
    if (euler_phi(n) != deg) continue;
    if (cyclotomic(static_cast<int>(n)) == f) return {RootOfUnityResult::Status::yes, static_cast<int>(n)};
  }
  return {RootOfUnityResult::Status::no, 0};
}

// ---------------------------------------------------------------- minimal polynomials

RatPoly min_poly_from_trace(const QuadExt& s) {
  const QuadExt two(Rational(2));
  if ((s - two).sign() > 0 || (s + two).sign() < 0) {
    throw Error(Errc::TraceOutOfRange, "|zeta + 1/zeta| = |" + s.to_string() + "| exceeds 2");
  }
  if (s.is_rational()) {
    if (s.a() == Rational(2)) return RatPoly::from_ints({-1, 1});
    if (s.a() == Rational(-2)) return RatPoly::from_ints({1, 1});
    return RatPoly({Rational(1), -s.a(), Rational(1)});
  }
  const Rational sum = (s + s.conj()).a();
  const Rational prod = (s * s.conj()).a();
  const RatPoly quartic({Rational(1), -sum, Rational(2) + prod, -sum, Rational(1)});
  const double sv = s.to_double();
  const std::complex<double> zeta(sv / 2.0, std::sqrt(std::max(0.0, 1.0 - sv * sv / 4.0)));
  return irreducible_factor_containing(quartic, zeta);
}

RatPoly min_poly_from_rotation_trace(const QuadExt& tr) { return min_poly_from_trace(tr - QuadExt(Rational(1))); }

RatPoly lift_trace_minpoly(const RatPoly& g) {
  const RatPoly m = g.monic();
  const int d = m.degree();
  const RatPoly lam2p1 = RatPoly::from_ints({1, 0, 1});
  RatPoly out;
  RatPoly power = RatPoly::from_ints({1});  // (lambda^2 + 1)^k
  for (int k = 0; k <= d; ++k) {
    out = out + m.coeff(k) * (power * RatPoly::monomial(d - k));
    power = power * lam2p1;
  }
  return out;
}

std::optional<std::pair<long long, long long>> rational_match(double x, long long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  long double h_prev = 1, h = std::floor(static_cast<long double>(x));
  long double k_prev = 0, k = 1;
  long double frac = static_cast<long double>(x) - h;
  std::optional<std::pair<long long, long long>> best;
  for (int iter = 0; iter < 64; ++iter) {
    if (k > static_cast<long double>(max_den)) break;
    if (std::abs(static_cast<long double>(x) - h / k) < tol) {
      best = std::make_pair(static_cast<long long>(h), static_cast<long long>(k));
      break;
    }
    if (frac < 1e-18L) break;
    const long double inv = 1.0L / frac;
    const long double a = std::floor(inv);
    frac = inv - a;
    const long double h_next = a * h + h_prev;
    const long double k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return best;
}

namespace {

std::optional<Rational> rationalize(double x) {
  if (auto m = rational_match(x, 1'000'000, 1e-9 * std::max(1.0, std::abs(x)))) {
    return Rational(m->first, m->second);
  }
  return std::nullopt;
}

bool divides(const RatPoly& f, const RatPoly& g) { return divmod(f, g).remainder.is_zero(); }

}  // namespace

RatPoly irreducible_factor_containing(const RatPoly& f, std::complex<double> root) {
  RatPoly p = squarefree_part(f);
  for (bool progress = true; progress && p.degree() > 1;) {
    progress = false;
    const auto roots = p.roots();
    std::vector<RatPoly> candidates;
    for (const auto& r : roots) {
      if (std::abs(r.imag()) < 1e-9) {
        if (auto q = rationalize(r.real())) candidates.push_back(RatPoly({-*q, Rational(1)}));
      }
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        const auto sum = roots[i] + roots[j];
        const auto prod = roots[i] * roots[j];
        if (std::abs(sum.imag()) > 1e-9 || std::abs(prod.imag()) > 1e-9) continue;
        auto qs = rationalize(sum.real());
        auto qp = rationalize(prod.real());
        if (qs && qp) candidates.push_back(RatPoly({*qp, -*qs, Rational(1)}));
      }
    }
    for (const auto& c : candidates) {
      if (c.degree() >= p.degree() || !divides(p, c)) continue;
      const RatPoly rest = divmod(p, c).quotient;
      p = std::abs(c.eval(root)) < std::abs(rest.eval(root)) ? c : rest;
      progress = true;
      break;
    }
  }
  return p.monic();
}

// ---------------------------------------------------------------- condition (C)

namespace {

int root_of_unity_order(long long p, long long q) {
  // order of exp(i pi p/q) with p/q in lowest terms
  long long two_q = 2 * q;
  long long g = std::gcd(std::abs(p), two_q);
  if (p == 0) g = two_q;
  return static_cast<int>(two_q / g);
}

ConditionC numeric_condition_C(double radians, const NumericTestConfig& cfg) {
  ConditionC out;
  out.status = ConditionC::Status::numeric_only;
  const double x = radians / std::numbers::pi;
  out.angle_over_pi = x;
  std::ostringstream transcript;
  transcript.precision(17);
  transcript << "continued fractions of theta/pi = " << x << " with denominators <= " << cfg.max_denominator
             << ", tolerance " << cfg.tolerance;
  if (auto m = rational_match(x, cfg.max_denominator, cfg.tolerance)) {
    long long p = m->first, q = m->second;
    const long long g = std::gcd(std::abs(p), q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
    out.order = root_of_unity_order(p, q);
    out.numeric_verdict = "likely rational " + std::to_string(p) + "/" + std::to_string(q);
    out.numeric_likely_holds = false;
    transcript << ": matched " << p << "/" << q;
  } else {
    out.numeric_verdict = "likely irrational";
    out.numeric_likely_holds = true;
    transcript << ": no convergent matched";
  }
  out.reason = transcript.str();
  return out;
}

}  // namespace

ConditionC check_condition_C(const AngleSpec& angle, const NumericTestConfig& cfg) {
  ConditionC out;
  switch (angle.kind()) {
    case AngleSpec::Kind::rational_pi: {
      const Rational& r = angle.rational_over_pi();
      const long long p = static_cast<long long>(r.num());
      const long long q = static_cast<long long>(r.den());
      out.status = ConditionC::Status::fails;
      out.order = root_of_unity_order(p, q);
      out.minpoly = cyclotomic(out.order);
      out.angle_over_pi = r.to_double();
      out.reason = "angle/pi = " + r.to_string() + " is rational; eigenvalue is a primitive root of unity of order " +
                   std::to_string(out.order);
      return out;
    }
    case AngleSpec::Kind::symbolic_quad:
      out.status = ConditionC::Status::holds;
      out.angle_over_pi = angle.over_pi().to_double();
      out.reason = "angle/pi = " + angle.over_pi().to_string() + " is a quadratic irrational";
      return out;
    case AngleSpec::Kind::numeric:
      return numeric_condition_C(angle.radians(), cfg);
  }
  return out;
}

ConditionC check_condition_C(const Rot3& r, const NumericTestConfig& cfg) {
  if ((r.matrix() - Eigen::Matrix3d::Identity()).norm() <= 1e-10) {
    ConditionC out;
    out.status = ConditionC::Status::fails;
    out.order = 1;
    out.minpoly = cyclotomic(1);
    out.reason = "rotation is the identity within 1e-10";
    return out;
  }
  return numeric_condition_C(axis_angle_of(r).theta, cfg);
}

ConditionC check_condition_C_trace_minpoly(const RatPoly& trace_minpoly, double trace_value) {
  ConditionC out;
  const RatPoly g_s = trace_minpoly.monic().shifted(Rational(1));  // minimal polynomial of s = tr - 1
  const double s = trace_value - 1.0;
  RatPoly f;
  if (g_s.degree() == 1) {
    f = min_poly_from_trace(QuadExt(-g_s.coeff(0)));
  } else if (g_s.degree() == 2) {
    // s = -b/2 +- sqrt(b^2 - 4c)/2
    const Rational b = g_s.coeff(1), c = g_s.coeff(0);
    const Rational disc = b * b - Rational(4) * c;
    if (disc.sign() < 0) throw Error(Errc::TraceNotRepresentable, "trace minimal polynomial has complex roots");
    const BigInt nd = disc.num() * disc.den();
    if (nd > BigInt(std::numeric_limits<long long>::max())) {
      throw Error(Errc::TraceNotRepresentable, "radicand too large");
    }
    QuadExt root(-b / Rational(2), Rational(BigInt(1), 2 * disc.den()), static_cast<long long>(nd));
    if (std::abs(root.to_double() - s) > std::abs(root.conj().to_double() - s)) root = root.conj();
    f = min_poly_from_trace(root);
  } else {
    if (std::abs(s) >= 2.0) throw Error(Errc::TraceOutOfRange, "|tr - 1| >= 2");
    f = lift_trace_minpoly(g_s);
  }
  out.minpoly = f;
  out.angle_over_pi = std::acos(std::clamp(s / 2.0, -1.0, 1.0)) / std::numbers::pi;
  const RootOfUnityResult rou = is_root_of_unity(f);
  if (rou.status == RootOfUnityResult::Status::yes) {
    out.status = ConditionC::Status::fails;
    out.order = rou.order;
    out.reason = "minimal polynomial " + f.to_string("x") + " is cyclotomic of order " + std::to_string(rou.order);
  } else {
    out.status = ConditionC::Status::holds;
    out.reason = "minimal polynomial " + f.to_string("x") +
                 (f.is_integral() ? " is not cyclotomic" : " has a non-integer coefficient");
  }
  return out;
}

}  // namespace holonomy
