#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "poreflow/config.hpp"
#include "poreflow/geometry.hpp"
#include "poreflow/mixture.hpp"
#include "poreflow/scales.hpp"

namespace poreflow {

/// Parametric description of the pore shape and wall-charge ramp; sampled
/// onto an axial grid by build_geometry.
struct GeometryParams {
  enum class Kind { cylinder, trumpet, profile };
  Kind kind = Kind::cylinder;
  double L = 0.0;
  double R = 0.0;              // cylinder radius
  double R1 = 0.0, R2 = 0.0;   // trumpet radii
  double R_res = 0.0;          // reservoir radius flanking a tabulated profile
  std::vector<std::pair<double, double>> profile;  // tabulated pore section
  double sigma0 = 0.0, L1 = 0.0, L2 = 0.0, eps = 1.0;  // tanh ramp
};

PoreGeometry build_geometry(const GeometryParams& gp, int n_z);

/// One named parameter set: reference scales, groups, mixture, boundary data
/// and geometry, plus alternate values exposed under extra keys.
struct Preset {
  std::string name;
  ReferenceScales scales;
  DimensionlessGroups groups;
  MixtureSpec mixture;
  BoundaryConditions bc;
  GeometryParams geometry;
  std::map<std::string, double> extras;
};

std::vector<std::string> preset_names();
Preset load_preset(const std::string& name);

/// Deterministic text form; serialize(deserialize(s)) == s byte for byte.
std::string serialize(const Preset& p);
Preset deserialize(const std::string& text);

/// Synthesized monotone (z, R) table of the ClyA pore section.
std::vector<std::pair<double, double>> clya_pore_table();

}  // namespace poreflow
