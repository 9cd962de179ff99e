#include <gtest/gtest.h>

#include <json.hpp>

#include <Eigen/Dense>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(HOLONOMY_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("holonomy_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const json& j) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump();
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

json rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    out.push_back(r);
  }
  return out;
}

Eigen::Matrix4d block(double a, double b) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = m(1, 1) = std::cos(a);
  m(1, 0) = std::sin(a);
  m(0, 1) = -std::sin(a);
  m(2, 2) = m(3, 3) = std::cos(b);
  m(3, 2) = std::sin(b);
  m(2, 3) = -std::sin(b);
  return m;
}

Eigen::Matrix4d swap13() {
  // Rotation by pi/2 in the (e1, e3) plane.
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = m(2, 2) = 0.0;
  m(2, 0) = 1.0;
  m(0, 2) = -1.0;
  return m;
}

std::string read_file(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_F(Cli, ClassifyExamples) {
  const CliRun d6 = run("classify --theta1 pi --theta2 pi*2/3 --phi pi*1/2");
  ASSERT_EQ(d6.code, 0) << d6.out;
  const json j = json::parse(d6.out);
  EXPECT_EQ(j["kind"], "dihedral");
  EXPECT_EQ(j["order"], 6);

  const json c1 = json::parse(run("classify --theta1 0 --theta2 0 --phi pi*1/2").out);
  EXPECT_EQ(c1["kind"], "cyclic");
  EXPECT_EQ(c1["order"], 1);

  const CliRun inf = run("classify --theta1 1.41421356*pi --theta2 1.7320508*pi --max-size 20000");
  ASSERT_EQ(inf.code, 0) << inf.out;
  const std::string kind = json::parse(inf.out)["kind"];
  EXPECT_TRUE(kind == "infinite_likely" || kind == "infinite_certified") << kind;
}

TEST_F(Cli, FlagErrorsNameTheFlag) {
  const CliRun bad = run("classify --theta1 pi*x --theta2 0");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("--theta1"), std::string::npos) << bad.out;
  EXPECT_EQ(run("classify --theta1 pi --theta2 pi --phi 0").code, 2);
  EXPECT_EQ(run("classify --bogus").code, 2);
  EXPECT_EQ(run("certify --theorem nope").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, OrbitCsvAndReport) {
  const std::string csv = path("id.csv");
  const CliRun id = run("orbit --theta1 0 --theta2 0 --omega 0,0,1 --csv " + csv);
  ASSERT_EQ(id.code, 0) << id.out;
  const std::string text = read_file(csv);
  EXPECT_EQ(text, "x,y,z\n0,0,1\n");
  EXPECT_EQ(json::parse(id.out)["size"], 1);

  const std::string csv2 = path("d6.csv");
  ASSERT_EQ(run("orbit --theta1 pi --theta2 pi*2/3 --omega 0.6,0.8,0 --csv " + csv2).code, 0);
  std::istringstream in(read_file(csv2));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,z");
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    double x = 0, y = 0, z = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &z), 3) << line;
    EXPECT_NEAR(x * x + y * y + z * z, 1.0, 1e-12);
    char again[128];
    std::snprintf(again, sizeof again, "%.17g,%.17g,%.17g", x, y, z);
    EXPECT_EQ(line, again);
  }
  EXPECT_EQ(count, 6);
}

TEST_F(Cli, OrbitConfinement) {
  const json circ = json::parse(run("orbit --theta1 sqrt:2*pi --theta2 pi --phi pi*1/2 --gamma 0.3 --omega 0.3,0.5,0.8 "
                                    "--max-size 5000")
                                    .out);
  EXPECT_EQ(circ["confinement"][0]["kind"], "circles");
  const json full =
      json::parse(run("orbit --theta1 sqrt:2*pi --theta2 sqrt:3*pi --omega 0.6,0.8,0 --max-size 20000").out);
  EXPECT_EQ(full["confinement"][0]["kind"], "full");
}

TEST_F(Cli, CertifyExitCodes) {
  const CliRun ok = run("certify --theorem abc --theta1 pi*1/2 --theta2 pi*1/4 --derive pow2:3");
  EXPECT_EQ(ok.code, 0) << ok.out;
  const json cs = json::parse(ok.out);
  ASSERT_TRUE(cs.is_array());
  bool quartic = false;
  for (const auto& c : cs) {
    if (c["claim"] == "condC") quartic = c["evidence"]["k1"]["minpoly_text"].get<std::string>().find("5/2") != std::string::npos;
  }
  EXPECT_TRUE(quartic) << ok.out;

  EXPECT_EQ(run("certify --theorem main5 --theta1 sqrt:2*pi --theta2 pi*1/2 --phase 0").code, 1);
  EXPECT_EQ(run("certify --theorem abc --theta1 1.41421356*pi --theta2 1.7320508*pi").code, 3);
  const CliRun m3 = run("certify --theorem main3 --theta1 pi*1/2 --theta2 sqrt:2*pi --minus-theta1 sqrt:3*pi "
                     "--minus-theta2 pi*1/2");
  EXPECT_EQ(m3.code, 0) << m3.out;
  const json j3 = json::parse(m3.out);
  EXPECT_EQ(j3[0]["evidence"]["N_plus"], 4);
  EXPECT_EQ(run("certify --theorem abc --gens " + path("missing.json")).code, 2);
}

TEST_F(Cli, TransportExamples) {
  const Eigen::Matrix4d a1 = block(0.7, -1.1) * swap13(), a2 = block(0.3, 0.9);
  const std::string gens = write("so4.json", {{"kind", "so4"}, {"matrices", {rows(a1), rows(a2)}}});
  const CliRun empty = run("transport --gens " + gens + " --vector 0.1,0.2,0.3,0.4");
  ASSERT_EQ(empty.code, 0) << empty.out;
  const json e = json::parse(empty.out);
  EXPECT_NEAR(e["vector"][2].get<double>(), 0.3, 1e-15);

  const json x = json::parse(run("transport --gens " + gens + " --word x:1 --vector 0.1,0.2,0.3,0.4").out);
  const Eigen::Vector4d want = a1 * Eigen::Vector4d(0.1, 0.2, 0.3, 0.4);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(x["vector"][i].get<double>(), want[i], 1e-12);
  EXPECT_NEAR(x["output_norm"].get<double>(), x["input_norm"].get<double>(), 1e-10);

  const json comm = json::parse(run("transport --gens " + gens + " --word x:1,y:1,x:-1,y:-1 --vector 1,0,0,0").out);
  const Eigen::Vector4d oracle = a2.transpose() * a1.transpose() * a2 * a1 * Eigen::Vector4d::UnitX();
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(comm["vector"][i].get<double>(), oracle[i], 1e-12);

  const CliRun bad = run("transport --gens " + gens + " --word x:1,q:2 --vector 1,0,0,0");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("q:2"), std::string::npos) << bad.out;
  EXPECT_EQ(run("transport --gens " + gens + " --vector 1,0,0").code, 2);
}

TEST_F(Cli, BallExamples) {
  const Eigen::Matrix3d c1 = Eigen::Vector3d(1, -1, -1).asDiagonal();
  Eigen::Matrix3d c2 = Eigen::Matrix3d::Identity();
  c2(0, 0) = c2(1, 1) = std::cos(2 * kPi / 3);
  c2(1, 0) = std::sin(2 * kPi / 3);
  c2(0, 1) = -c2(1, 0);
  const std::string gens = write("d6.json", {{"kind", "so3"}, {"matrices", {rows(c1), rows(c2)}}});
  const CliRun r = run("ball --gens " + gens);
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["size"], 6);
  EXPECT_EQ(j["saturated"], true);

  const json s = json::parse(run("ball --theta1 sqrt:2*pi --theta2 sqrt:3*pi --max-size 3000 --snapshots --probes 512").out);
  ASSERT_TRUE(s["snapshots"].is_array());
  for (std::size_t i = 1; i < s["snapshots"].size(); ++i) {
    EXPECT_LE(s["snapshots"][i]["covering_radius"].get<double>(), s["snapshots"][i - 1]["covering_radius"].get<double>());
  }
  EXPECT_EQ(run("ball --gens " + write("bad.json", {{"kind", "so5"}, {"matrices", {rows(c1)}}})).code, 2);
}

TEST_F(Cli, OutputFileIsWrittenAtomically) {
  const std::string out = path("report.json");
  const CliRun r = run("classify --theta1 pi --theta2 pi*2/3 -o " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(read_file(out))["order"], 6);
  for (const auto& e : fs::directory_iterator(dir_)) {
    EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos) << e.path();
  }
}

TEST_F(Cli, DeterministicAcrossThreadCounts) {
  for (const std::string args : {"orbit --theta1 sqrt:2*pi --theta2 sqrt:3*pi --omega 0.6,0.8,0 --max-size 5000 --seed 3",
                                 "ball --theta1 sqrt:2*pi --theta2 sqrt:3*pi --max-size 5000 --snapshots --seed 3"}) {
    const CliRun a = run(args, "HOLONOMY_THREADS=1");
    const CliRun b = run(args, "HOLONOMY_THREADS=4");
    const CliRun c = run(args, "HOLONOMY_THREADS=4");
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(b.out, c.out);
  }
}
