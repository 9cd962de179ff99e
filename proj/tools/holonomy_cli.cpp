#include "cli_io.hpp"

#include "holonomy/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <numbers>

using namespace holonomy;
using nlohmann::json;

namespace {

struct Globals {
  double tol = 1e-9;
  std::size_t max_size = 100000;
  int max_depth = 40;
  std::uint64_t seed = 0;
  int probes = 4096;
  std::string output;
};

struct ConfigFlags {
  std::string theta1 = "0";
  std::string theta2 = "0";
  std::string phi = "pi*1/2";
  std::string gamma = "0";
};

void add_globals(CLI::App* app, Globals& g) {
  app->add_option("--tol", g.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-size", g.max_size, "Enumeration size limit")->check(CLI::PositiveNumber);
  app->add_option("--max-depth", g.max_depth, "Enumeration depth limit")->check(CLI::PositiveNumber);
  app->add_option("--seed", g.seed, "Probe sampling seed");
  app->add_option("--probes", g.probes, "Covering-radius probe count")->check(CLI::PositiveNumber);
  app->add_option("-o,--output", g.output, "Output file (default stdout)");
}

void add_config(CLI::App* app, ConfigFlags& c, const std::string& prefix = "") {
  app->add_option("--" + prefix + "theta1", c.theta1, "Angle of C_1");
  app->add_option("--" + prefix + "theta2", c.theta2, "Angle of C_2");
  app->add_option("--" + prefix + "phi", c.phi, "Axis polar angle in (0, pi/2]");
  app->add_option("--" + prefix + "gamma", c.gamma, "Axis azimuth");
}

AngleSpec angle_flag(const std::string& flag, const std::string& value) {
  try {
    return cli::parse_angle(value);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, "--" + flag + ": " + e.detail());
  }
}

GenConfig config_of(const ConfigFlags& c, const std::string& prefix = "") {
  GenConfig g;
  g.theta1 = angle_flag(prefix + "theta1", c.theta1);
  g.theta2 = angle_flag(prefix + "theta2", c.theta2);
  g.phi = angle_flag(prefix + "phi", c.phi);
  g.gamma = angle_flag(prefix + "gamma", c.gamma);
  g.validate();
  return g;
}

std::optional<DerivedCase> derive_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  DerivedCase c;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  const auto num = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(Errc::ParseError, "--derive: bad value '" + text + "'");
  };
  if (parts.size() == 1 && parts[0] == "products") {
    c.kind = DerivedCase::Kind::products;
  } else if (parts.size() == 2 && parts[0] == "pow2") {
    c.kind = DerivedCase::Kind::dihedral_pow2;
    c.m = num(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "prime") {
    c.kind = DerivedCase::Kind::dihedral_prime;
    c.n = num(parts[1]);
    c.p = num(parts[2]);
  } else {
    throw Error(Errc::ParseError, "--derive: expected products, pow2:m or prime:n:p, got '" + text + "'");
  }
  derived_power(c);
  return c;
}

std::pair<AnnotatedRot, AnnotatedRot> config_gens(const ConfigFlags& flags, const std::string& derive) {
  auto gens = annotated_gens_from_config(config_of(flags));
  if (auto d = derive_flag(derive)) gens = derived_gens(*d, gens.first, gens.second);
  return gens;
}

std::vector<AnnotatedRot> plain(const std::vector<Rot3>& rs) {
  std::vector<AnnotatedRot> out;
  for (const auto& r : rs) out.push_back({r, std::nullopt, std::nullopt});
  return out;
}

Eigen::Vector3d unit_vector(const std::string& flag, const std::string& text) {
  std::vector<double> v;
  try {
    v = cli::parse_doubles(text);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, "--" + flag + ": " + e.detail());
  }
  if (v.size() != 3) throw Error(Errc::ParseError, "--" + flag + ": expected three components");
  Eigen::Vector3d w(v[0], v[1], v[2]);
  if (w.norm() == 0.0) throw Error(Errc::ParseError, "--" + flag + ": zero vector");
  return w.normalized();
}

json confinement_json(const Confinement& c) {
  json planes = json::array();
  for (const auto& p : c.planes) planes.push_back({{"normal", {p.normal[0], p.normal[1], p.normal[2]}}, {"offset", p.offset}});
  return {{"kind", to_string(c.kind)}, {"planes", planes}, {"max_deviation", c.max_deviation}};
}

json report_json(const OrbitReport& r) {
  json conf = json::array();
  for (const auto& c : r.confinement) conf.push_back(confinement_json(c));
  json snaps = json::array();
  for (const auto& s : r.snapshots) snaps.push_back({{"depth", s.depth}, {"size", s.size}, {"covering_radius", s.covering_radius}});
  return {{"size", r.points.size()},
          {"depth", r.depth},
          {"saturated", r.saturated},
          {"covering_radius", r.covering_radius},
          {"confinement", conf},
          {"snapshots", snaps}};
}

template <class G>
json ball_json(const std::vector<G>& gens, const Globals& g, bool snapshots) {
  const GroupBall<G> ball = group_ball(gens, BallLimits{g.max_depth, g.max_size, g.tol});
  json j{{"kind", to_string(ball.kind)},
         {"size", ball.elements.size()},
         {"depth", ball.depth},
         {"saturated", ball.saturated}};
  if (snapshots) {
    const auto radii = covering_radius_snapshots(ball, g.probes, g.seed);
    json s = json::array();
    for (std::size_t d = 0; d < radii.size(); ++d) {
      s.push_back({{"depth", d}, {"size", ball.size_at_depth[d]}, {"covering_radius", radii[d]}});
    }
    j["covering_radius"] = radii.back();
    j["snapshots"] = s;
  } else {
    j["covering_radius"] = covering_radius_group(ball, g.probes, g.seed);
  }
  return j;
}

int exit_code(const std::vector<Certificate>& certs) {
  bool numeric = false;
  for (const auto& c : certs) {
    if (c.verdict == Verdict::fails) return 1;
    numeric = numeric || c.verdict == Verdict::numeric_only;
  }
  return numeric ? 3 : 0;
}

U2Mat u2_phase(double phase, const SU2& s) { return U2Mat::unchecked(std::polar(1.0, phase) * s.matrix()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy groups of flat connections: classification, certificates, orbits"};
  app.require_subcommand(1);
  Globals g;
  ConfigFlags cfg, minus;
  std::string gens_path, derive, omega = "1,0,0", omega_minus, csv_path, theorem = "abc", phase;
  std::string connection_path, word, vector_text;
  bool snapshots = false;

  auto* classify_cmd = app.add_subcommand("classify", "Classify the group generated by C_1, C_2");
  add_globals(classify_cmd, g);
  add_config(classify_cmd, cfg);
  classify_cmd->add_option("--derive", derive, "products | pow2:m | prime:n:p");
  classify_cmd->add_option("--gens", gens_path, "Generator JSON file (so3)");

  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of a unit vector");
  add_globals(orbit_cmd, g);
  add_config(orbit_cmd, cfg);
  orbit_cmd->add_option("--derive", derive, "products | pow2:m | prime:n:p");
  orbit_cmd->add_option("--gens", gens_path, "Generator JSON file (so3, or so4 for the S^2 x S^2 orbit)");
  orbit_cmd->add_option("--omega", omega, "Start vector x,y,z");
  orbit_cmd->add_option("--omega-minus", omega_minus, "Second start vector for so4 generators");
  orbit_cmd->add_option("--csv", csv_path, "Points CSV output");

  auto* certify_cmd = app.add_subcommand("certify", "Check hypotheses and emit certificates");
  add_globals(certify_cmd, g);
  add_config(certify_cmd, cfg);
  add_config(certify_cmd, minus, "minus-");
  certify_cmd->add_option("--theorem", theorem, "abc | cond1 | main3 | main4 | main5")
      ->check(CLI::IsMember({"abc", "cond1", "main3", "main4", "main5"}));
  certify_cmd->add_option("--derive", derive, "products | pow2:m | prime:n:p (abc)");
  certify_cmd->add_option("--gens", gens_path, "Generator JSON file (so3 for abc, su2 for main4, u2 for main5)");
  certify_cmd->add_option("--phase", phase, "Central phase gamma of B_2 (main5)");

  auto* transport_cmd = app.add_subcommand("transport", "Parallel transport along a normal polygonal curve");
  add_globals(transport_cmd, g);
  transport_cmd->add_option("--connection", connection_path, "Connection JSON file");
  transport_cmd->add_option("--gens", gens_path, "Generator JSON file (so4, su2, u2)");
  transport_cmd->add_option("--word", word, "Curve, e.g. x:1,y:-2");
  transport_cmd->add_option("--vector", vector_text, "Fiber vector (re,im pairs for complex fibers)")->required();

  auto* ball_cmd = app.add_subcommand("ball", "Enumerate a word ball and measure its covering radius");
  add_globals(ball_cmd, g);
  add_config(ball_cmd, cfg);
  ball_cmd->add_option("--derive", derive, "products | pow2:m | prime:n:p");
  ball_cmd->add_option("--gens", gens_path, "Generator JSON file");
  ball_cmd->add_flag("--snapshots", snapshots, "Per-depth covering radii");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    int code = 0;
    std::string out;
    if (classify_cmd->parsed()) {
      ClassifyOptions opts;
      opts.limits = BallLimits{g.max_depth, g.max_size, g.tol};
      Classification c;
      if (!gens_path.empty()) {
        const auto file = cli::read_gens(gens_path);
        if (file.kind != GroupKind::so3) throw Error(Errc::WrongFiber, "classify needs so3 generators");
        c = classify(plain(cli::as_rot3(file)), opts);
      } else {
        const auto [a, b] = config_gens(cfg, derive);
        c = classify(std::vector<AnnotatedRot>{a, b}, opts);
      }
      out = cli::dump(to_json(c));
    } else if (orbit_cmd->parsed()) {
      OrbitLimits lim;
      lim.max_depth = g.max_depth;
      lim.max_size = g.max_size;
      lim.tol = g.tol;
      lim.probes = g.probes;
      lim.seed = g.seed;
      const Eigen::Vector3d w = unit_vector("omega", omega);
      OrbitReport r;
      if (!gens_path.empty()) {
        const auto file = cli::read_gens(gens_path);
        if (file.kind == GroupKind::so3) {
          r = orbit(cli::as_rot3(file), w, lim);
        } else if (file.kind == GroupKind::so4) {
          std::vector<std::pair<Rot3, Rot3>> pairs;
          for (const auto& a : cli::as_rot4(file)) pairs.push_back(so4_to_so3_pair(a));
          const Eigen::Vector3d wm = omega_minus.empty() ? w : unit_vector("omega-minus", omega_minus);
          r = product_orbit(pairs, w, wm, lim);
        } else {
          throw Error(Errc::WrongFiber, "orbit needs so3 or so4 generators");
        }
      } else {
        const auto [a, b] = config_gens(cfg, derive);
        r = orbit({a.r, b.r}, w, lim);
      }
      if (!csv_path.empty()) cli::write_output(csv_path, cli::points_csv(r.points));
      out = cli::dump(report_json(r));
    } else if (certify_cmd->parsed()) {
      AbcOptions opts;
      opts.tol = g.tol;
      std::vector<Certificate> certs;
      if (theorem == "abc") {
        if (!gens_path.empty()) {
          const auto file = cli::read_gens(gens_path);
          if (file.kind != GroupKind::so3 || file.matrices.size() != 2) {
            throw Error(Errc::WrongFiber, "abc needs two so3 generators");
          }
          const auto rs = cli::as_rot3(file);
          certs = check_ABC(rs[0], rs[1], opts);
        } else {
          const auto [a, b] = config_gens(cfg, derive);
          certs = check_ABC(a, b, opts);
        }
      } else if (theorem == "cond1") {
        certs.push_back(check_prop_cond1(config_of(cfg), opts));
      } else if (theorem == "main3") {
        certs.push_back(check_thm_main3(config_of(cfg), config_of(minus, "minus-"), opts));
      } else if (theorem == "main4") {
        if (!gens_path.empty()) {
          const auto file = cli::read_gens(gens_path);
          if (file.kind != GroupKind::su2 || file.matrices.size() != 2) {
            throw Error(Errc::WrongFiber, "main4 needs two su2 generators");
          }
          const auto bs = cli::as_su2(file);
          certs.push_back(check_thm_main4(bs[0], bs[1], std::nullopt, std::nullopt, opts));
        } else {
          const GenConfig c = config_of(cfg);
          certs.push_back(check_thm_main4(b_theta(c.theta1.radians()), su2_gen_from_config(c.theta2, c.phi, c.gamma),
                                          c.theta1, c.theta2, opts));
        }
      } else {
        Main5Input in;
        if (!gens_path.empty()) {
          const auto file = cli::read_gens(gens_path);
          if (file.kind != GroupKind::u2 || file.matrices.size() != 2) {
            throw Error(Errc::WrongFiber, "main5 needs two u2 generators");
          }
          const auto bs = cli::as_u2(file);
          in.b1 = bs[0];
          in.b2 = bs[1];
          if (!phase.empty()) in.phase = angle_flag("phase", phase);
        } else {
          const GenConfig c = config_of(cfg);
          const AngleSpec ph = angle_flag("phase", phase.empty() ? "0" : phase);
          in.b1 = U2Mat::from_su2(b_theta(c.theta1.radians()));
          in.b2 = u2_phase(ph.radians(), su2_gen_from_config(c.theta2, c.phi, c.gamma));
          in.psi_angle = c.theta1;
          in.q_angle = c.theta2;
          in.phase = ph;
        }
        certs.push_back(check_thm_main5(in, opts));
      }
      json arr = json::array();
      for (const auto& c : certs) arr.push_back(to_json(c));
      out = cli::dump(arr);
      code = exit_code(certs);
    } else if (transport_cmd->parsed()) {
      Connection conn;
      if (!connection_path.empty()) {
        conn = cli::read_connection(connection_path);
      } else if (!gens_path.empty()) {
        const auto file = cli::read_gens(gens_path);
        if (file.matrices.size() != 2) throw Error(Errc::ParseError, "transport needs two generators");
        switch (file.kind) {
          case GroupKind::so4: {
            const auto a = cli::as_rot4(file);
            conn = connection_from_gens(a[0], a[1]);
            break;
          }
          case GroupKind::su2: {
            const auto a = cli::as_su2(file);
            conn = connection_from_gens(a[0], a[1]);
            break;
          }
          case GroupKind::u2: {
            const auto a = cli::as_u2(file);
            conn = connection_from_gens(a[0], a[1]);
            break;
          }
          case GroupKind::so3: throw Error(Errc::WrongFiber, "transport needs so4, su2 or u2 generators");
        }
      } else {
        throw Error(Errc::ParseError, "transport needs --connection or --gens");
      }
      NPCWord w;
      try {
        w = NPCWord::parse(word);
      } catch (const Error& e) {
        throw Error(Errc::ParseError, "--word: " + e.detail());
      }
      std::vector<double> v;
      try {
        v = cli::parse_doubles(vector_text);
      } catch (const Error& e) {
        throw Error(Errc::ParseError, "--vector: " + e.detail());
      }
      json j{{"fiber", conn.fiber == Fiber::real4 ? "real4" : "complex2"}, {"word", w.to_string()}};
      if (conn.fiber == Fiber::real4) {
        const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        const Eigen::VectorXd y = transport(conn, w, x);
        j["vector"] = std::vector<double>(y.data(), y.data() + y.size());
        j["input_norm"] = x.norm();
        j["output_norm"] = y.norm();
      } else {
        if (v.size() % 2 != 0) throw Error(Errc::ParseError, "--vector: complex fibers need re,im pairs");
        Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size() / 2));
        for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = {v[static_cast<std::size_t>(2 * k)], v[static_cast<std::size_t>(2 * k + 1)]};
        const Eigen::VectorXcd y = transport(conn, w, x);
        json arr = json::array();
        for (Eigen::Index k = 0; k < y.size(); ++k) arr.push_back({y[k].real(), y[k].imag()});
        j["vector"] = arr;
        j["input_norm"] = x.norm();
        j["output_norm"] = y.norm();
      }
      out = cli::dump(j);
    } else if (ball_cmd->parsed()) {
      if (!gens_path.empty()) {
        const auto file = cli::read_gens(gens_path);
        switch (file.kind) {
          case GroupKind::so3: out = cli::dump(ball_json(cli::as_rot3(file), g, snapshots)); break;
          case GroupKind::so4: out = cli::dump(ball_json(cli::as_rot4(file), g, snapshots)); break;
          case GroupKind::su2: out = cli::dump(ball_json(cli::as_su2(file), g, snapshots)); break;
          case GroupKind::u2: out = cli::dump(ball_json(cli::as_u2(file), g, snapshots)); break;
        }
      } else {
        const auto [a, b] = config_gens(cfg, derive);
        out = cli::dump(ball_json(std::vector<Rot3>{a.r, b.r}, g, snapshots));
      }
    }
    cli::write_output(g.output, out);
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
