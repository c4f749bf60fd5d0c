#include "specneumann/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specneumann {

namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_number_list(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trimmed(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(field) + ": bad number '" + item + "'");
    }
  }
  return out;
}

}  // namespace

std::vector<int> parse_degree_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_number_list(text, "degrees")) {
    const int n = static_cast<int>(v);
    if (v != n || n < 0) throw std::invalid_argument("degrees: entries must be integers >= 0");
    out.push_back(n);
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));

    if (key == "case") config.case_name = value;
    else if (key == "mode") config.mode = value;
    else if (key == "degrees") config.degrees = parse_degree_list(value);
    else if (key == "quad") config.quad = value == "auto" ? -1 : std::stoi(value);
    else if (key == "out") config.out = value;
    else if (key == "a") config.a = std::stod(value);
    else if (key == "M") config.m_entries = parse_number_list(value, "M");
    else if (key == "es") config.es = std::stoi(value);
    else if (key == "dim") config.dimension = std::stoi(value);
    else if (key == "map") config.map = value;
    else if (key == "u_exact") config.u_exact = value;
    else if (key == "gamma") config.gamma = value;
    else if (key == "f") config.f = value;
    else if (key == "g") config.g = value;
    else if (key == "surface") config.surface = value;
    else
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "case = " << c.case_name << "\n";
  out << "mode = " << c.mode << "\n";
  out << "degrees = ";
  for (std::size_t i = 0; i < c.degrees.size(); ++i)
    out << (i ? "," : "") << c.degrees[i];
  out << "\n";
  if (c.quad < 0) out << "quad = auto\n";
  else out << "quad = " << c.quad << "\n";
  if (!c.out.empty()) out << "out = " << c.out << "\n";
  out << "a = " << c.a << "\n";
  if (!c.m_entries.empty()) {
    out << "M = ";
    for (std::size_t i = 0; i < c.m_entries.size(); ++i)
      out << (i ? "," : "") << c.m_entries[i];
    out << "\n";
  }
  out << "es = " << c.es << "\n";
  if (c.case_name == "custom") {
    out << "dim = " << c.dimension << "\n";
    out << "map = " << c.map << "\n";
    if (!c.u_exact.empty()) out << "u_exact = " << c.u_exact << "\n";
    if (!c.gamma.empty()) out << "gamma = " << c.gamma << "\n";
    if (!c.f.empty()) out << "f = " << c.f << "\n";
    if (!c.g.empty()) out << "g = " << c.g << "\n";
    if (!c.surface.empty()) out << "surface = " << c.surface << "\n";
  }
  return out.str();
}

void validate_config(const RunConfig& c) {
  static const char* kCases[] = {"planar-quadratic", "ellipsoid", "star", "custom"};
  if (std::find(std::begin(kCases), std::end(kCases), c.case_name) == std::end(kCases))
    throw std::invalid_argument("case: unknown case '" + c.case_name + "'");
  if (c.mode != "helmholtz" && c.mode != "pure-poisson")
    throw std::invalid_argument("mode: expected 'helmholtz' or 'pure-poisson'");
  if (c.degrees.empty()) throw std::invalid_argument("degrees: list must not be empty");
  if (!std::is_sorted(c.degrees.begin(), c.degrees.end()) ||
      std::adjacent_find(c.degrees.begin(), c.degrees.end()) != c.degrees.end())
    throw std::invalid_argument("degrees: list must be strictly ascending");
  if (c.quad != -1 && c.quad < 1)
    throw std::invalid_argument("quad: must be 'auto' or an integer >= 1");
  if (c.case_name == "planar-quadratic" && !(c.a > 0.0 && c.a < 1.0))
    throw std::invalid_argument("a: must lie in (0,1)");
  if (c.es < 2) throw std::invalid_argument("es: must be >= 2");
  if (!c.m_entries.empty() && c.m_entries.size() != 9)
    throw std::invalid_argument("M: expected 9 row-major entries");
  if (c.case_name == "custom") {
    if (c.dimension != 2 && c.dimension != 3)
      throw std::invalid_argument("dim: must be 2 or 3");
    static const char* kMaps[] = {"identity", "planar-quadratic", "linear3d", "star"};
    if (std::find(std::begin(kMaps), std::end(kMaps), c.map) == std::end(kMaps))
      throw std::invalid_argument("map: unknown mapping '" + c.map + "'");
    if (c.map == "star" && c.dimension != 3)
      throw std::invalid_argument("map: star mapping needs dim = 3");
    if (c.map == "linear3d" && c.dimension != 3)
      throw std::invalid_argument("map: linear3d mapping needs dim = 3");
    if (c.map == "planar-quadratic" && c.dimension != 2)
      throw std::invalid_argument("map: planar-quadratic mapping needs dim = 2");
    if (c.u_exact.empty() && c.f.empty())
      throw std::invalid_argument("custom case needs u_exact (manufactured data) or f");
    if (c.mode == "helmholtz" && c.gamma.empty())
      throw std::invalid_argument("gamma: required in helmholtz mode");
  }
}

bool config_equivalent(const RunConfig& l, const RunConfig& r) {
  return l.case_name == r.case_name && l.mode == r.mode && l.degrees == r.degrees &&
         l.quad == r.quad && l.out == r.out && l.a == r.a && l.m_entries == r.m_entries &&
         l.es == r.es && l.dimension == r.dimension && l.map == r.map &&
         l.u_exact == r.u_exact && l.gamma == r.gamma && l.f == r.f && l.g == r.g &&
         l.surface == r.surface;
}

}  // namespace specneumann
