#include "cli_io.hpp"
#include "holonomy/bundle_transport.hpp"
#include "holonomy/classify_certify.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/linalg_groups.hpp"
#include "holonomy/orbit_explorer.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace holonomy;

namespace {

GenConfig config_of(const std::string& t1, const std::string& t2, const std::string& phi, const std::string& gamma) {
  GenConfig c;
  c.theta1 = cli::parse_angle(t1);
  c.theta2 = cli::parse_angle(t2);
  c.phi = cli::parse_angle(phi);
  c.gamma = cli::parse_angle(gamma);
  c.validate();
  return c;
}

std::optional<DerivedCase> derive_of(const std::string& text) {
  if (text.empty()) return std::nullopt;
  DerivedCase c;
  if (text == "products") return c;
  int a = 0, b = 0;
  if (std::sscanf(text.c_str(), "pow2:%d", &a) == 1) {
    c.kind = DerivedCase::Kind::dihedral_pow2;
    c.m = a;
  } else if (std::sscanf(text.c_str(), "prime:%d:%d", &a, &b) == 2) {
    c.kind = DerivedCase::Kind::dihedral_prime;
    c.n = a;
    c.p = b;
  } else {
    throw Error(Errc::ParseError, "derive: expected products, pow2:m or prime:n:p, got '" + text + "'");
  }
  derived_power(c);
  return c;
}

std::vector<Rot3> rot3s(const std::vector<Eigen::Matrix3d>& ms) {
  std::vector<Rot3> out;
  for (const auto& m : ms) out.push_back(Rot3::from_matrix(m));
  return out;
}

std::string json_list(const std::vector<Certificate>& cs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : cs) j.push_back(to_json(c));
  return j.dump();
}

template <class G>
py::dict ball_summary(const std::vector<G>& gens, std::size_t max_size, int max_depth, int probes, std::uint64_t seed) {
  const auto b = group_ball(gens, BallLimits{max_depth, max_size, 1e-9});
  py::dict d;
  d["size"] = b.elements.size();
  d["depth"] = b.depth;
  d["saturated"] = b.saturated;
  d["covering_radius"] = covering_radius_group(b, probes, seed);
  return d;
}

}  // namespace

PYBIND11_MODULE(_holonomy, m) {
  m.doc() = "Holonomy groups of flat connections on the torus";

  py::register_exception<Error>(m, "HolonomyError");

  m.def("angle_radians", [](const std::string& s) { return cli::parse_angle(s).radians(); }, py::arg("text"));
  m.def("c_theta", [](double t) { return Eigen::Matrix3d(c_theta(t).matrix()); }, py::arg("theta"));
  m.def("v_phi_gamma", [](double p, double g) { return Eigen::Matrix3d(v_phi_gamma(p, g).matrix()); }, py::arg("phi"),
        py::arg("gamma"));
  m.def("b_theta", [](double t) { return Eigen::Matrix2cd(b_theta(t).matrix()); }, py::arg("theta"));
  m.def("phi_cover", [](const Eigen::Matrix2cd& u) { return Eigen::Matrix3d(phi_cover(SU2::from_matrix(u)).matrix()); },
        py::arg("u"));
  m.def(
      "so4_to_so3_pair",
      [](const Eigen::Matrix4d& a) {
        const auto [p, q] = so4_to_so3_pair(Rot4::from_matrix(a));
        return std::make_pair(Eigen::Matrix3d(p.matrix()), Eigen::Matrix3d(q.matrix()));
      },
      py::arg("a"));
  m.def(
      "lift_so3_pair",
      [](const Eigen::Matrix3d& p, const Eigen::Matrix3d& q) {
        return Eigen::Matrix4d(lift_so3_pair(Rot3::from_matrix(p), Rot3::from_matrix(q)).matrix());
      },
      py::arg("plus"), py::arg("minus"));

  m.def(
      "gens_from_config",
      [](const std::string& t1, const std::string& t2, const std::string& phi, const std::string& gamma) {
        const auto [a, b] = gens_from_config(config_of(t1, t2, phi, gamma));
        return std::make_pair(Eigen::Matrix3d(a.matrix()), Eigen::Matrix3d(b.matrix()));
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("phi") = "pi*1/2", py::arg("gamma") = "0");

  m.def(
      "_classify",
      [](const std::string& t1, const std::string& t2, const std::string& phi, const std::string& gamma,
         const std::string& derive, std::size_t max_size) {
        auto gens = annotated_gens_from_config(config_of(t1, t2, phi, gamma));
        if (auto d = derive_of(derive)) gens = derived_gens(*d, gens.first, gens.second);
        ClassifyOptions opts;
        opts.limits.max_size = max_size;
        return to_json(classify(std::vector<AnnotatedRot>{gens.first, gens.second}, opts)).dump();
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("phi"), py::arg("gamma"), py::arg("derive"), py::arg("max_size"));

  m.def(
      "_check_abc",
      [](const std::string& t1, const std::string& t2, const std::string& phi, const std::string& gamma,
         const std::string& derive) {
        auto gens = annotated_gens_from_config(config_of(t1, t2, phi, gamma));
        if (auto d = derive_of(derive)) gens = derived_gens(*d, gens.first, gens.second);
        return json_list(check_ABC(gens.first, gens.second));
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("phi"), py::arg("gamma"), py::arg("derive"));

  m.def(
      "_check_abc_matrices",
      [](const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
        return json_list(check_ABC(Rot3::from_matrix(a), Rot3::from_matrix(b)));
      },
      py::arg("c1"), py::arg("c2"));

  m.def(
      "_check_main3",
      [](const std::vector<std::string>& plus, const std::vector<std::string>& minus) {
        if (plus.size() != 4 || minus.size() != 4) throw Error(Errc::ParseError, "expected (theta1, theta2, phi, gamma)");
        const auto c = check_thm_main3(config_of(plus[0], plus[1], plus[2], plus[3]),
                                       config_of(minus[0], minus[1], minus[2], minus[3]));
        return to_json(c).dump();
      },
      py::arg("plus"), py::arg("minus"));

  m.def(
      "minpoly_product",
      [](const std::string& t1, const std::string& t2, const std::string& phi, const std::string& gamma,
         const std::string& word) {
        const MinpolyResult r = minpoly_product(config_of(t1, t2, phi, gamma), word);
        py::dict d;
        d["exact"] = r.exact;
        d["eigenphase"] = r.eigenphase;
        d["reason"] = r.reason;
        if (r.poly) {
          std::vector<std::string> coeffs;
          for (const auto& c : r.poly->coeffs()) coeffs.push_back(c.to_string());
          d["coefficients"] = coeffs;
          d["text"] = r.poly->to_string("lambda");
        } else {
          d["coefficients"] = py::none();
          d["text"] = py::none();
        }
        return d;
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("phi") = "pi*1/2", py::arg("gamma") = "0", py::arg("word") = "12");

  m.def(
      "orbit",
      [](const std::vector<Eigen::Matrix3d>& gens, const Eigen::Vector3d& omega, std::size_t max_size, int max_depth,
         int probes, std::uint64_t seed) {
        OrbitLimits lim;
        lim.max_size = max_size;
        lim.max_depth = max_depth;
        lim.probes = probes;
        lim.seed = seed;
        const OrbitReport r = orbit(rot3s(gens), omega.normalized(), lim);
        Eigen::MatrixXd pts(static_cast<Eigen::Index>(r.points.size()), 3);
        for (std::size_t i = 0; i < r.points.size(); ++i) pts.row(static_cast<Eigen::Index>(i)) = r.points[i].transpose();
        std::vector<double> snaps;
        for (const auto& s : r.snapshots) snaps.push_back(s.covering_radius);
        py::dict d;
        d["points"] = pts;
        d["covering_radius"] = r.covering_radius;
        d["saturated"] = r.saturated;
        d["depth"] = r.depth;
        d["confinement"] = to_string(r.confinement.at(0).kind);
        d["snapshots"] = snaps;
        return d;
      },
      py::arg("gens"), py::arg("omega"), py::arg("max_size") = 100000, py::arg("max_depth") = 40, py::arg("probes") = 4096,
      py::arg("seed") = 0);

  m.def(
      "ball_so3",
      [](const std::vector<Eigen::Matrix3d>& gens, std::size_t max_size, int max_depth, int probes, std::uint64_t seed) {
        return ball_summary(rot3s(gens), max_size, max_depth, probes, seed);
      },
      py::arg("gens"), py::arg("max_size") = 100000, py::arg("max_depth") = 40, py::arg("probes") = 4096,
      py::arg("seed") = 0);

  m.def(
      "ball_su2",
      [](const std::vector<Eigen::Matrix2cd>& gens, std::size_t max_size, int max_depth, int probes, std::uint64_t seed) {
        std::vector<SU2> g;
        for (const auto& x : gens) g.push_back(SU2::from_matrix(x));
        return ball_summary(g, max_size, max_depth, probes, seed);
      },
      py::arg("gens"), py::arg("max_size") = 100000, py::arg("max_depth") = 40, py::arg("probes") = 4096,
      py::arg("seed") = 0);

  m.def(
      "transport_so4",
      [](const Eigen::Matrix4d& a1, const Eigen::Matrix4d& a2, const std::string& word, const Eigen::Vector4d& v) {
        const Connection c = connection_from_gens(Rot4::from_matrix(a1), Rot4::from_matrix(a2));
        return Eigen::VectorXd(transport(c, NPCWord::parse(word), Eigen::VectorXd(v)));
      },
      py::arg("a1"), py::arg("a2"), py::arg("word"), py::arg("vector"));

  m.def(
      "transport_u2",
      [](const Eigen::Matrix2cd& b1, const Eigen::Matrix2cd& b2, const std::string& word, const Eigen::Vector2cd& v) {
        const Connection c = connection_from_gens(U2Mat::from_matrix(b1), U2Mat::from_matrix(b2));
        return Eigen::VectorXcd(transport(c, NPCWord::parse(word), Eigen::VectorXcd(v)));
      },
      py::arg("b1"), py::arg("b2"), py::arg("word"), py::arg("vector"));

  m.def(
      "approximate_element",
      [](const std::vector<Eigen::Matrix3d>& gens, const Eigen::Matrix3d& target, double eps, std::size_t budget) {
        const ApproxResult r = approximate_element(rot3s(gens), Rot3::from_matrix(target), eps, budget);
        py::dict d;
        d["found"] = r.found;
        d["word"] = r.word;
        d["distance"] = r.distance;
        d["expansions"] = r.expansions;
        return d;
      },
      py::arg("gens"), py::arg("target"), py::arg("eps"), py::arg("budget") = 1000000);
}
