#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "poreflow/axial.hpp"
#include "poreflow/config.hpp"
#include "poreflow/geometry.hpp"
#include "poreflow/hydrodynamics.hpp"
#include "poreflow/mixture.hpp"
#include "poreflow/scales.hpp"
#include "poreflow/slices.hpp"

namespace poreflow {

/// Fully resolved steady-state problem.
struct Problem {
  PoreGeometry geometry;
  MixtureSpec mixture;
  BoundaryConditions bc;
  DimensionlessGroups groups;
  SolverConfig config;

  void validate() const;
};

struct SteadySolution {
  Problem problem;
  GeometricIntegrals geom_ints;
  SliceSet slices;
  AxialPotential axial_pot;
  AxialFactors factors;
  TransportClosure closure;
  RadialPressure radial_p;
  EDLKernels kernels;
  AxialPressure axial_p;
  Field2D u;  // axial velocity
  Field2D w;  // radial velocity (diagnostic reconstruction)
  Field2D p;  // total pressure p_r + p_z
  std::vector<double> err_history;
  bool converged = false;
  int iterations = 0;
};

/// Thrown when the fixed-point iteration hits the cap; carries the last state.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& msg, std::shared_ptr<SteadySolution> partial)
      : std::runtime_error(msg), partial_(std::move(partial)) {}
  const std::shared_ptr<SteadySolution>& partial() const { return partial_; }

 private:
  std::shared_ptr<SteadySolution> partial_;
};

/// Picard fixed point over the radial, axial, and hydrodynamic sub-solves.
SteadySolution solve_steady(const Problem& prob);

/// Per-species currents I_a = 2 pi z_a J_a at the interior face nearest z_S.
std::vector<double> current_at(const SteadySolution& sol, double z_S);
double total_current_at(const SteadySolution& sol, double z_S);

/// Volumetric flow rate int u r dr per axial node.
std::vector<double> flow_rate_profile(const SteadySolution& sol);

struct FlowDecomposition {
  double u_PF = 0.0, u_HS = 0.0, u_EDL = 0.0, u_total = 0.0;
  double defect = 0.0;    // |u_total - (PF + HS + EDL)|
  double zeta_avg = 0.0;  // double integral of zeta
  double C_u = 0.0;       // Lambda^2 16/(R^4 L)
};

/// Volumetric-flow split for a cylindrical pore.
FlowDecomposition flow_decomposition(const SteadySolution& sol);

struct CurrentDecomposition {
  std::vector<double> I_E, I_P, I_C;  // per species, evaluated at z = 0
  std::vector<double> C;              // sign-change thresholds k 8/(Pe R^2) + ...
};

/// Outlet current split for a cylindrical pore with equal bulk concentrations.
CurrentDecomposition current_decomposition(const SteadySolution& sol);

struct TransportMetrics {
  std::vector<double> t;            // I_a / sum I
  std::vector<double> conductance;  // I_a / dphi
  double Q_eo = 0.0;                // cross-section flow 2 pi int u r dr at z_eval
};

TransportMetrics transport_metrics(const SteadySolution& sol, double z_eval);

}  // namespace poreflow
