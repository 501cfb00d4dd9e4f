#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poreflow/coupler.hpp"
#include "poreflow/presets.hpp"

namespace poreflow {

/// Fully resolved case: parameters, solver controls, output destination.
struct CaseSpec {
  Preset base;
  SolverConfig config;
  std::string out_dir = ".";
  bool si = false;
};

/// Partial settings from flags or a config file, applied over a CaseSpec.
struct CaseOverrides {
  std::optional<std::string> geometry;  // "cylinder", "trumpet", "profile:<path>"
  std::optional<std::string> variant;
  std::optional<double> dphi, dp, nbulk, a;
  std::optional<int> nr, nz;
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<bool> si;
};

CaseOverrides overrides_from_config(const ConfigFile& cf);
void apply_overrides(CaseSpec& spec, const CaseOverrides& ov);

Problem make_problem(const CaseSpec& spec);

/// Scalar observables of one converged (or failed) case.
struct CaseSummary {
  bool ok = false;
  std::string status = "failed";
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double zeta_avg = 0.0;
  double u_avg = 0.0;   // total volumetric flow, int int u r dr dz
  double Q_eo = 0.0;    // cross-section flow 2 pi int u r dr at the outlet
  double max_u = 0.0;
  double max_u_z = 0.0;
  std::vector<double> I;  // outlet currents per species
  double I_total = 0.0;
  std::vector<double> t;  // transport numbers (nan when undefined)
  double dphi = 0.0, dp = 0.0;
};

CaseSummary summarize(const SteadySolution& sol);

/// Solves the case and writes fields.csv, axial.csv, summary.csv and meta.txt
/// into spec.out_dir. Returns 0 on success, 1 on nonconvergence (partial
/// artifacts are still written and flagged in meta.txt).
int run_case(const CaseSpec& spec);

struct SweepSpec {
  enum class Axis { dphi, dp, nbulk };
  Axis axis = Axis::dphi;
  std::vector<double> values;
  CaseSpec base;
};

SweepSpec::Axis axis_from_string(const std::string& s);
std::string axis_to_string(SweepSpec::Axis a);

/// Applies one sweep value to a copy of the base case.
CaseSpec sweep_point(const SweepSpec& spec, double value);

/// Runs all points on a bounded worker pool and writes sweep.csv (rows in
/// input order; failed points keep their row with a status message).
int run_sweep(const SweepSpec& spec);

/// 17-significant-digit formatting used by every CSV writer.
std::string format_g17(double v);

}  // namespace poreflow
