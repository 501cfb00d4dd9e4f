#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poreflow/caseio.hpp"

namespace {

using namespace poreflow;

struct CommonFlags {
  std::string preset = "cylinder";
  std::string config_path;
  CaseOverrides flags;
  std::optional<double> dphi, dp, nbulk, a, tol;
  std::optional<int> nr, nz;
  std::string geometry, variant, out;
  bool si = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--preset", f.preset, "Parameter preset (general, cylinder, trumpet, clya)");
  cmd->add_option("--config", f.config_path, "Config file; its keys override the flags");
  cmd->add_option("--geometry", f.geometry, "cylinder, trumpet, or profile:<path>");
  cmd->add_option("--variant", f.variant, "classical, bikerman, or mixture");
  cmd->add_option("--dphi", f.dphi, "Potential difference phi_in - phi_out");
  cmd->add_option("--dp", f.dp, "Pressure difference p_in - p_out");
  cmd->add_option("--nbulk", f.nbulk, "Bulk concentration applied to all species, both ends");
  cmd->add_option("--a", f.a, "Ion volume fraction a = v/v0 (0 selects the classical variant)");
  cmd->add_option("--nr", f.nr, "Radial node count");
  cmd->add_option("--nz", f.nz, "Axial node count");
  cmd->add_option("--tol", f.tol, "Fixed-point tolerance on the factors Q");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_flag("--si", f.si, "Write outputs in SI units using the reference scales");
}

CaseSpec resolve(const CommonFlags& f) {
  CaseSpec spec;
  spec.base = load_preset(f.preset);

  CaseOverrides ov;
  if (!f.geometry.empty()) ov.geometry = f.geometry;
  if (!f.variant.empty()) ov.variant = f.variant;
  ov.dphi = f.dphi;
  ov.dp = f.dp;
  ov.nbulk = f.nbulk;
  ov.a = f.a;
  ov.nr = f.nr;
  ov.nz = f.nz;
  ov.tol = f.tol;
  if (!f.out.empty()) ov.out = f.out;
  if (f.si) ov.si = true;
  apply_overrides(spec, ov);

  if (!f.config_path.empty())
    apply_overrides(spec, overrides_from_config(ConfigFile::parse_file(f.config_path)));
  return spec;
}

int cmd_presets() {
  for (const auto& name : preset_names()) {
    std::cout << "# " << name << "\n" << serialize(load_preset(name)) << "\n";
  }
  return 0;
}

int cmd_decompose(const CommonFlags& f) {
  CaseSpec spec = resolve(f);
  auto sol = solve_steady(make_problem(spec));
  auto fd = flow_decomposition(sol);
  std::cout << "quantity,value\n";
  std::cout << "u_PF," << format_g17(fd.u_PF) << "\n";
  std::cout << "u_HS," << format_g17(fd.u_HS) << "\n";
  std::cout << "u_EDL," << format_g17(fd.u_EDL) << "\n";
  std::cout << "u_total," << format_g17(fd.u_total) << "\n";
  std::cout << "defect," << format_g17(fd.defect) << "\n";
  std::cout << "zeta_avg," << format_g17(fd.zeta_avg) << "\n";
  std::cout << "C_u," << format_g17(fd.C_u) << "\n";
  try {
    auto cd = current_decomposition(sol);
    for (size_t s = 0; s < cd.I_E.size(); ++s) {
      const std::string& nm = spec.base.mixture.species[s].name;
      std::cout << "I_E_" << nm << "," << format_g17(cd.I_E[s]) << "\n";
      std::cout << "I_P_" << nm << "," << format_g17(cd.I_P[s]) << "\n";
      std::cout << "I_C_" << nm << "," << format_g17(cd.I_C[s]) << "\n";
      std::cout << "C_" << nm << "," << format_g17(cd.C[s]) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "current decomposition unavailable: " << e.what() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic solver for electrokinetic flow in axisymmetric nanopores"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "Solve a single case and write its artifacts");
  add_common(run, run_flags);

  CommonFlags sweep_flags;
  std::string axis = "dphi";
  std::vector<double> values;
  std::vector<double> range;  // start stop count
  auto* sweep = app.add_subcommand("sweep", "Solve a family of cases along one axis");
  add_common(sweep, sweep_flags);
  sweep->add_option("--axis", axis, "Swept quantity: dphi, dp, or nbulk");
  sweep->add_option("--values", values, "Explicit sweep values");
  sweep->add_option("--range", range, "start stop count (linear spacing)")->expected(3);

  auto* presets = app.add_subcommand("presets", "Print the built-in parameter sets");
  (void)presets;

  CommonFlags dec_flags;
  auto* decompose =
      app.add_subcommand("decompose", "Flow/current decomposition of a cylindrical case");
  add_common(decompose, dec_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_case(resolve(run_flags));
    if (presets->parsed()) return cmd_presets();
    if (decompose->parsed()) return cmd_decompose(dec_flags);
    if (sweep->parsed()) {
      SweepSpec ss;
      ss.axis = axis_from_string(axis);
      ss.base = resolve(sweep_flags);
      ss.values = values;
      if (!range.empty()) {
        int count = static_cast<int>(range[2]);
        if (count < 1) throw std::invalid_argument("range count must be >= 1");
        for (int i = 0; i < count; ++i)
          ss.values.push_back(count == 1 ? range[0]
                                         : range[0] + (range[1] - range[0]) * i / (count - 1));
      }
      return run_sweep(ss);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
