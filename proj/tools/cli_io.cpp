#include "cli_io.hpp"

#include "holonomy/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace holonomy::cli {

using nlohmann::json;

namespace {

long long parse_int(const std::string& s, const std::string& whole) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) throw Error(Errc::ParseError, "bad angle '" + whole + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& whole) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size() || !std::isfinite(v)) throw Error(Errc::ParseError, "bad number '" + whole + "'");
  return v;
}

Rational parse_fraction(const std::string& s, const std::string& whole) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, whole));
  const long long q = parse_int(s.substr(slash + 1), whole);
  if (q == 0) throw Error(Errc::ParseError, "zero denominator in '" + whole + "'");
  return Rational(parse_int(s.substr(0, slash), whole), q);
}

std::complex<double> entry(const json& e, const std::string& path) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw Error(Errc::ParseError, path + ": matrix entries must be numbers or [re, im] pairs");
}

Eigen::MatrixXcd matrix_of(const json& m, const std::string& path) {
  if (!m.is_array() || m.empty() || !m[0].is_array()) throw Error(Errc::ParseError, path + ": expected a matrix");
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = static_cast<Eigen::Index>(m[0].size());
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(Errc::ParseError, path + ": ragged matrix");
    }
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = entry(row[static_cast<std::size_t>(j)], path);
  }
  return out;
}

void require_shape(const GensFile& g, int n) {
  for (const auto& m : g.matrices) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(Errc::DimensionMismatch, "expected " + std::to_string(n) + "x" + std::to_string(n) + " matrices");
    }
  }
}

}  // namespace

AngleSpec parse_angle(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(Errc::ParseError, "empty angle");
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    s.erase(0, 1);
  }
  const auto sign = [&](Rational r) { return neg ? -r : r; };
  if (s.rfind("sqrt:", 0) == 0) {
    const std::string rest = s.substr(5);
    const auto star = rest.find("*pi");
    if (star == std::string::npos) throw Error(Errc::ParseError, "bad angle '" + text + "'");
    const long long d = parse_int(rest.substr(0, star), text);
    if (d <= 0) throw Error(Errc::ParseError, "sqrt argument must be positive in '" + text + "'");
    std::string tail = rest.substr(star + 3);
    Rational c(1);
    if (!tail.empty()) {
      if (tail[0] != '*') throw Error(Errc::ParseError, "bad angle '" + text + "'");
      c = parse_fraction(tail.substr(1), text);
    }
    return AngleSpec::symbolic_quad(QuadExt(Rational(0), sign(c), d));
  }
  if (s == "pi") return AngleSpec::rational_pi(sign(Rational(1)));
  if (s.rfind("pi*", 0) == 0) return AngleSpec::rational_pi(sign(parse_fraction(s.substr(3), text)));
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) {
    const double x = parse_double(s.substr(0, s.size() - 3), text);
    return AngleSpec::numeric((neg ? -x : x) * std::numbers::pi);
  }
  if (s.find_first_not_of("0123456789") == std::string::npos) {
    const long long v = parse_int(s, text);
    if (v == 0) return AngleSpec::rational_pi(Rational(0));
  }
  const double x = parse_double(s, text);
  return AngleSpec::numeric(neg ? -x : x);
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_double(tok, text));
  if (out.empty()) throw Error(Errc::ParseError, "expected comma-separated numbers, got '" + text + "'");
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

GensFile read_gens(const std::string& path) {
  const json j = read_json(path);
  if (!j.is_object() || !j.contains("kind") || !j.contains("matrices") || !j["matrices"].is_array()) {
    throw Error(Errc::ParseError, path + ": expected {\"kind\", \"matrices\"}");
  }
  GensFile g;
  g.kind = group_kind_from_string(j["kind"].get<std::string>());
  for (const auto& m : j["matrices"]) g.matrices.push_back(matrix_of(m, path));
  if (g.matrices.empty()) throw Error(Errc::ParseError, path + ": no matrices");
  return g;
}

std::vector<Rot3> as_rot3(const GensFile& g) {
  require_shape(g, 3);
  std::vector<Rot3> out;
  for (const auto& m : g.matrices) out.push_back(Rot3::from_matrix(m.real()));
  return out;
}

std::vector<Rot4> as_rot4(const GensFile& g) {
  require_shape(g, 4);
  std::vector<Rot4> out;
  for (const auto& m : g.matrices) out.push_back(Rot4::from_matrix(m.real()));
  return out;
}

std::vector<SU2> as_su2(const GensFile& g) {
  require_shape(g, 2);
  std::vector<SU2> out;
  for (const auto& m : g.matrices) out.push_back(SU2::from_matrix(m));
  return out;
}

std::vector<U2Mat> as_u2(const GensFile& g) {
  require_shape(g, 2);
  std::vector<U2Mat> out;
  for (const auto& m : g.matrices) out.push_back(U2Mat::from_matrix(m));
  return out;
}

Connection read_connection(const std::string& path) {
  const json j = read_json(path);
  if (!j.is_object() || !j.contains("fiber") || !j.contains("p1") || !j.contains("p2")) {
    throw Error(Errc::ParseError, path + ": expected {\"fiber\", \"p1\", \"p2\"}");
  }
  const std::string fiber = j["fiber"].get<std::string>();
  const Eigen::MatrixXcd p1 = matrix_of(j["p1"], path), p2 = matrix_of(j["p2"], path);
  if (fiber == "real4") {
    if (p1.rows() != 4 || p1.cols() != 4 || p2.rows() != 4 || p2.cols() != 4) {
      throw Error(Errc::DimensionMismatch, "real4 connections need 4x4 matrices");
    }
    return Connection::real4(p1.real(), p2.real());
  }
  if (fiber == "complex2") {
    if (p1.rows() != 2 || p1.cols() != 2 || p2.rows() != 2 || p2.cols() != 2) {
      throw Error(Errc::DimensionMismatch, "complex2 connections need 2x2 matrices");
    }
    return Connection::complex2(p1, p2, j.value("su2", false));
  }
  throw Error(Errc::ParseError, path + ": unknown fiber '" + fiber + "'");
}

json complex_matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json real_matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::ParseError, "cannot write '" + path + "'");
  }
}

std::string points_csv(const std::vector<Eigen::VectorXd>& points) {
  std::string out = (!points.empty() && points.front().size() == 6) ? "x1,y1,z1,x2,y2,z2\n" : "x,y,z\n";
  char buf[64];
  for (const auto& p : points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      out += buf;
      out += k + 1 < p.size() ? ',' : '\n';
    }
  }
  return out;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace holonomy::cli
