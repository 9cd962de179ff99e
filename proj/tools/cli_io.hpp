#pragma once

#include "holonomy/bundle_transport.hpp"
#include "holonomy/classify_certify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace holonomy::cli {

/// Angle grammar: 0, pi, pi*p/q, sqrt:d*pi, sqrt:d*pi*p/q, <decimal>*pi, <decimal>
/// (radians); an optional leading '-' negates. Throws Error(ParseError).
AngleSpec parse_angle(const std::string& text);

/// Comma-separated doubles.
std::vector<double> parse_doubles(const std::string& text);

/// Generator file {"kind": "so3"|"so4"|"su2"|"u2", "matrices": [...]}.
/// Complex entries are [re, im] pairs.
struct GensFile {
  GroupKind kind = GroupKind::so3;
  std::vector<Eigen::MatrixXcd> matrices;
};
GensFile read_gens(const std::string& path);
std::vector<Rot3> as_rot3(const GensFile& g);
std::vector<Rot4> as_rot4(const GensFile& g);
std::vector<SU2> as_su2(const GensFile& g);
std::vector<U2Mat> as_u2(const GensFile& g);

/// Connection file {"fiber": "real4"|"complex2", "p1": M, "p2": M, "su2": bool}.
Connection read_connection(const std::string& path);

nlohmann::json read_json(const std::string& path);
nlohmann::json complex_matrix_json(const Eigen::MatrixXcd& m);
nlohmann::json real_matrix_json(const Eigen::MatrixXd& m);

/// Writes to stdout when path is empty, otherwise to a temporary sibling
/// file that is then renamed over path.
void write_output(const std::string& path, const std::string& content);

/// One row per point, 17 significant digits.
std::string points_csv(const std::vector<Eigen::VectorXd>& points);

std::string dump(const nlohmann::json& j);

}  // namespace holonomy::cli
