#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poreflow {

/// Discretization and iteration controls shared by all solvers.
struct SolverConfig {
  int n_r = 200;
  int n_z = 200;
  double picard_tol = 1e-8;
  int picard_max_iter = 400;
  double relaxation = 1.0;    // under-relaxation omega in (0,1] for the transport factors
  double u_relaxation = 1.0;  // under-relaxation in (0,1] for the velocity feedback
  double newton_tol = 1e-12;
  int newton_max_iter = 50;

  void validate() const;
};

/// Dirichlet data at the outlet (z=0) and inlet (z=L), dimensionless.
struct BoundaryConditions {
  std::vector<double> n_out;  // per-species molar densities
  std::vector<double> n_in;
  double phi_out = 0.0;
  double phi_in = 0.0;
  double p_out = 0.0;
  double p_in = 0.0;

  double dphi() const { return phi_in - phi_out; }
  double dp() const { return p_in - p_out; }
  void validate() const;
};

/// Flat key/value configuration file with optional [section] headers.
/// Keys inside a section are addressed as "section.key"; '#' starts a comment.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<int> get_int(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace poreflow
