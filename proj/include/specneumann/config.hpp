#pragma once

#include <string>
#include <vector>

namespace specneumann {

/// One solver run described as flat key = value text. Unset expression
/// fields stay empty; `quad` = -1 means the automatic degree + 4 choice.
struct RunConfig {
  std::string case_name = "planar-quadratic";  // planar-quadratic | ellipsoid | star | custom
  std::string mode = "helmholtz";              // helmholtz | pure-poisson
  std::vector<int> degrees;
  int quad = -1;
  std::string out;

  // Mapping parameters.
  double a = 0.5;                   // planar-quadratic
  std::vector<double> m_entries;    // linear3d, 9 values row-major
  int es = 5;                       // star smoothness

  // Custom-case fields.
  int dimension = 2;
  std::string map = "identity";     // identity | planar-quadratic | linear3d | star
  std::string u_exact;              // expressions over (s,t) or (s1,s2,s3)
  std::string gamma;
  std::string f;
  std::string g;                    // flux over (theta) or (theta,phi)
  std::string surface;              // star radius over (theta,phi)
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Field-level checks (degree list non-empty and ascending, parameters in
/// range, recognized names). Throws std::invalid_argument naming the field.
void validate_config(const RunConfig& config);

bool config_equivalent(const RunConfig& lhs, const RunConfig& rhs);

std::vector<int> parse_degree_list(const std::string& text);

}  // namespace specneumann
