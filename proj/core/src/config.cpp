#include "poreflow/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poreflow {

void SolverConfig::validate() const {
  if (n_r < 16 || n_z < 16) throw std::invalid_argument("SolverConfig: need n_r, n_z >= 16");
  if (!(picard_tol > 0.0) || !(newton_tol > 0.0))
    throw std::invalid_argument("SolverConfig: tolerances must be positive");
  if (picard_max_iter < 1 || newton_max_iter < 1)
    throw std::invalid_argument("SolverConfig: iteration caps must be positive");
  if (!(relaxation > 0.0 && relaxation <= 1.0))
    throw std::invalid_argument("SolverConfig: relaxation must lie in (0,1]");
  if (!(u_relaxation > 0.0 && u_relaxation <= 1.0))
    throw std::invalid_argument("SolverConfig: u_relaxation must lie in (0,1]");
}

void BoundaryConditions::validate() const {
  if (n_out.size() != n_in.size())
    throw std::invalid_argument("BoundaryConditions: species count mismatch between ends");
  if (n_out.empty()) throw std::invalid_argument("BoundaryConditions: no species data");
  for (double v : n_out)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("BoundaryConditions: concentrations must be non-negative");
  for (double v : n_in)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("BoundaryConditions: concentrations must be non-negative");
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("ConfigFile: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("ConfigFile: unterminated section header at line " +
                                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("ConfigFile: expected key=value at line " +
                                  std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("ConfigFile: empty key at line " + std::to_string(lineno));
    if (!section.empty()) key = section + "." + key;
    cfg.kv_[key] = val;
  }
  return cfg;
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& key) const {
  auto s = get(key);
  if (!s) return std::nullopt;
  size_t pos = 0;
  double v = std::stod(*s, &pos);
  if (pos != s->size()) throw std::invalid_argument("ConfigFile: bad number for key " + key);
  return v;
}

std::optional<int> ConfigFile::get_int(const std::string& key) const {
  auto s = get(key);
  if (!s) return std::nullopt;
  size_t pos = 0;
  int v = std::stoi(*s, &pos);
  if (pos != s->size()) throw std::invalid_argument("ConfigFile: bad integer for key " + key);
  return v;
}

}  // namespace poreflow
