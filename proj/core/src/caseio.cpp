#include "poreflow/caseio.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <thread>

namespace poreflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

double default_v0(const CaseSpec& spec) {
  if (spec.base.mixture.v0 > 0.0) return spec.base.mixture.v0;
  auto it = spec.base.extras.find("v0_finite");
  return it != spec.base.extras.end() ? it->second : 0.018;
}

/// Per-column SI multipliers; all 1 when --si is off.
struct SiFactors {
  double z = 1.0, r = 1.0, phi = 1.0, n = 1.0, p = 1.0, u = 1.0, w = 1.0;
  double I = 1.0, zint = 1.0, zavg = 1.0, flow = 1.0, Qeo = 1.0;

  static SiFactors from(const CaseSpec& spec) {
    SiFactors f;
    if (!spec.si) return f;
    const auto& s = spec.base.scales;
    f.z = s.L0;
    f.r = s.R0;
    f.phi = s.phi_ref();
    f.n = s.c_si();
    f.p = s.p_ref();
    f.u = s.u_ref();
    f.w = spec.base.groups.delta * s.u_ref();
    f.I = s.I_ref();
    f.zint = s.phi_ref() * s.R0 * s.R0;
    f.zavg = f.zint * s.L0;
    f.Qeo = s.Qeo_ref();
    f.flow = s.Qeo_ref() * s.L0;
    return f;
  }
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
}

std::string fields_csv(const SteadySolution& sol, const SiFactors& si) {
  const auto& spec = sol.problem.mixture;
  std::string out = "z,r,phi";
  for (const auto& sp : spec.species) out += ",n_" + sp.name;
  out += ",p,u,w\n";
  const int nr = sol.slices.nr(), nz = sol.slices.nz();
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      out += format_g17(sol.problem.geometry.z[j] * si.z);
      out += ',' + format_g17(sol.slices.grids[j].r[i] * si.r);
      out += ',' + format_g17((sol.axial_pot.phi_z[j] + sol.slices.phi_r(i, j)) * si.phi);
      for (int s = 0; s < spec.count(); ++s) out += ',' + format_g17(sol.slices.n[s](i, j) * si.n);
      out += ',' + format_g17(sol.p(i, j) * si.p);
      out += ',' + format_g17(sol.u(i, j) * si.u);
      out += ',' + format_g17(sol.w(i, j) * si.w);
      out += '\n';
    }
  }
  return out;
}

std::string axial_csv(const SteadySolution& sol, const SiFactors& si) {
  const auto& spec = sol.problem.mixture;
  const int ns = spec.count();
  std::string out = "z";
  for (const auto& sp : spec.species) out += ",Q_" + sp.name;
  out += ",phi_z,p_z,zeta_int";
  for (const auto& sp : spec.species) out += ",I_" + sp.name;
  out += ",I_total\n";
  const int nz = sol.slices.nz();
  const int nf = nz - 1;
  for (int j = 0; j < nz; ++j) {
    out += format_g17(sol.problem.geometry.z[j] * si.z);
    for (int s = 0; s < ns; ++s) out += ',' + format_g17(sol.factors.Q[s][j]);
    out += ',' + format_g17(sol.axial_pot.phi_z[j] * si.phi);
    out += ',' + format_g17(sol.axial_p.p_z[j] * si.p);
    out += ',' + format_g17(sol.kernels.Zint[j] * si.zint);
    const int face = std::min(j, nf - 1);
    double tot = 0.0;
    for (int s = 0; s < ns; ++s) {
      double I = 2.0 * std::numbers::pi * spec.species[s].z * sol.factors.flux[s][face];
      tot += I;
      out += ',' + format_g17(I * si.I);
    }
    out += ',' + format_g17(tot * si.I);
    out += '\n';
  }
  return out;
}

std::string summary_csv(const CaseSummary& cs, const std::vector<std::string>& names,
                        const SiFactors& si) {
  std::string out = "status,converged,iterations,residual,dphi,dp,zeta_avg,u_avg,Q_eo,max_u,max_u_z";
  for (const auto& n : names) out += ",I_" + n;
  out += ",I_total";
  for (const auto& n : names) out += ",t_" + n;
  out += '\n';
  out += sanitize(cs.status);
  out += ',' + std::string(cs.converged ? "1" : "0");
  out += ',' + std::to_string(cs.iterations);
  out += ',' + format_g17(cs.residual);
  out += ',' + format_g17(cs.dphi * si.phi);
  out += ',' + format_g17(cs.dp * si.p);
  out += ',' + format_g17(cs.zeta_avg * si.zavg);
  out += ',' + format_g17(cs.u_avg * si.flow);
  out += ',' + format_g17(cs.Q_eo * si.Qeo);
  out += ',' + format_g17(cs.max_u * si.u);
  out += ',' + format_g17(cs.max_u_z * si.z);
  for (double I : cs.I) out += ',' + format_g17(I * si.I);
  out += ',' + format_g17(cs.I_total * si.I);
  for (double t : cs.t) out += ',' + format_g17(t);
  out += '\n';
  return out;
}

std::string meta_text(const CaseSpec& spec, const CaseSummary& cs,
                      const std::vector<double>& err_history) {
  std::string out;
  out += "status=" + sanitize(cs.status) + "\n";
  out += "converged=" + std::string(cs.converged ? "true" : "false") + "\n";
  out += "iterations=" + std::to_string(cs.iterations) + "\n";
  out += "si=" + std::string(spec.si ? "true" : "false") + "\n";
  out += "config.n_r=" + std::to_string(spec.config.n_r) + "\n";
  out += "config.n_z=" + std::to_string(spec.config.n_z) + "\n";
  out += "config.picard_tol=" + format_g17(spec.config.picard_tol) + "\n";
  out += "config.picard_max_iter=" + std::to_string(spec.config.picard_max_iter) + "\n";
  out += "config.relaxation=" + format_g17(spec.config.relaxation) + "\n";
  out += "config.u_relaxation=" + format_g17(spec.config.u_relaxation) + "\n";
  out += "config.newton_tol=" + format_g17(spec.config.newton_tol) + "\n";
  out += "\n# resolved parameters\n";
  out += serialize(spec.base);
  out += "\n# iteration log (max-norm update per sweep)\n";
  for (size_t i = 0; i < err_history.size(); ++i)
    out += std::to_string(i + 1) + " " + format_g17(err_history[i]) + "\n";
  return out;
}

CaseSummary failed_summary(const CaseSpec& spec, const std::string& why) {
  CaseSummary cs;
  cs.ok = false;
  cs.status = why;
  cs.dphi = spec.base.bc.dphi();
  cs.dp = spec.base.bc.dp();
  const size_t ns = spec.base.mixture.species.size();
  cs.residual = cs.zeta_avg = cs.u_avg = cs.Q_eo = cs.max_u = cs.max_u_z = kNaN;
  cs.I.assign(ns, kNaN);
  cs.I_total = kNaN;
  cs.t.assign(ns, kNaN);
  return cs;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CaseOverrides overrides_from_config(const ConfigFile& cf) {
  CaseOverrides ov;
  ov.geometry = cf.get("geometry");
  ov.variant = cf.get("variant");
  ov.dphi = cf.get_double("dphi");
  ov.dp = cf.get_double("dp");
  ov.nbulk = cf.get_double("nbulk");
  ov.a = cf.get_double("a");
  ov.nr = cf.get_int("nr");
  ov.nz = cf.get_int("nz");
  ov.tol = cf.get_double("tol");
  ov.out = cf.get("out");
  if (auto s = cf.get("si")) ov.si = (*s == "true" || *s == "1");
  return ov;
}

void apply_overrides(CaseSpec& spec, const CaseOverrides& ov) {
  auto& g = spec.base.geometry;
  if (ov.geometry) {
    const std::string& s = *ov.geometry;
    if (s == "cylinder") {
      g.kind = GeometryParams::Kind::cylinder;
      if (g.R <= 0.0) g.R = g.R1 > 0.0 ? g.R1 : 5.0;
    } else if (s == "trumpet") {
      g.kind = GeometryParams::Kind::trumpet;
      if (g.R1 <= 0.0) g.R1 = g.R > 0.0 ? g.R : 10.0;
      if (g.R2 <= 0.0 || g.R2 > g.R1) g.R2 = 0.15 * g.R1;
    } else if (s.rfind("profile:", 0) == 0) {
      std::ifstream is(s.substr(8));
      if (!is) throw std::runtime_error("cannot open profile: " + s.substr(8));
      std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
      g.kind = GeometryParams::Kind::profile;
      g.profile = parse_profile(text);
      g.R_res = 0.0;  // use the tabulated span as-is, no reservoir flanks
      g.L = g.profile.back().first - g.profile.front().first;
    } else {
      throw std::invalid_argument("unknown geometry: " + s);
    }
  }
  auto& mix = spec.base.mixture;
  if (ov.variant) {
    Variant v = variant_from_string(*ov.variant);
    mix.variant = v;
    if (v == Variant::classical) {
      for (auto& sp : mix.species) sp.a = 0.0, sp.v = 0.0;
    } else {
      if (mix.v0 <= 0.0) mix.v0 = default_v0(spec);
      if (v == Variant::bikerman)
        for (auto& sp : mix.species) sp.a = 1.0, sp.v = mix.v0;
      else
        for (auto& sp : mix.species) sp.v = sp.a * mix.v0;
    }
  }
  if (ov.a) {
    const double a = *ov.a;
    if (a == 0.0) {
      mix.variant = Variant::classical;
      for (auto& sp : mix.species) sp.a = 0.0, sp.v = 0.0;
    } else {
      if (mix.variant == Variant::classical) mix.variant = Variant::mixture;
      if (mix.v0 <= 0.0) mix.v0 = default_v0(spec);
      for (auto& sp : mix.species) sp.a = a, sp.v = a * mix.v0;
    }
  }
  auto& bc = spec.base.bc;
  if (ov.nbulk) {
    std::fill(bc.n_out.begin(), bc.n_out.end(), *ov.nbulk);
    std::fill(bc.n_in.begin(), bc.n_in.end(), *ov.nbulk);
  }
  if (ov.dphi) {
    bc.phi_out = 0.0;
    bc.phi_in = *ov.dphi;
  }
  if (ov.dp) {
    bc.p_out = 0.0;
    bc.p_in = *ov.dp;
  }
  if (ov.nr) spec.config.n_r = *ov.nr;
  if (ov.nz) spec.config.n_z = *ov.nz;
  if (ov.tol) spec.config.picard_tol = *ov.tol;
  if (ov.out) spec.out_dir = *ov.out;
  if (ov.si) spec.si = *ov.si;
}

Problem make_problem(const CaseSpec& spec) {
  Problem prob;
  prob.geometry = build_geometry(spec.base.geometry, spec.config.n_z);
  prob.mixture = spec.base.mixture;
  prob.bc = spec.base.bc;
  prob.groups = spec.base.groups;
  prob.config = spec.config;
  return prob;
}

CaseSummary summarize(const SteadySolution& sol) {
  CaseSummary cs;
  cs.ok = sol.converged;
  cs.status = sol.converged ? "ok" : "nonconverged";
  cs.converged = sol.converged;
  cs.iterations = sol.iterations;
  cs.residual = sol.err_history.empty() ? kNaN : sol.err_history.back();
  cs.dphi = sol.problem.bc.dphi();
  cs.dp = sol.problem.bc.dp();
  cs.zeta_avg = trapz(sol.problem.geometry.z, sol.kernels.Zint);
  auto F = flow_rate_profile(sol);
  cs.u_avg = trapz(sol.problem.geometry.z, F);
  cs.Q_eo = 2.0 * std::numbers::pi * F.front();
  cs.max_u = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < sol.slices.nz(); ++j)
    for (int i = 0; i < sol.slices.nr(); ++i)
      if (sol.u(i, j) > cs.max_u) {
        cs.max_u = sol.u(i, j);
        cs.max_u_z = sol.problem.geometry.z[j];
      }
  cs.I = current_at(sol, 0.0);
  cs.I_total = 0.0;
  for (double I : cs.I) cs.I_total += I;
  cs.t.assign(cs.I.size(), kNaN);
  if (cs.I_total != 0.0)
    for (size_t s = 0; s < cs.I.size(); ++s) cs.t[s] = cs.I[s] / cs.I_total;
  return cs;
}

int run_case(const CaseSpec& spec) {
  std::filesystem::create_directories(spec.out_dir);
  const SiFactors si = SiFactors::from(spec);

  std::shared_ptr<SteadySolution> sol;
  std::string fail_reason;
  int status = 0;
  try {
    sol = std::make_shared<SteadySolution>(solve_steady(make_problem(spec)));
  } catch (const NonConvergenceError& e) {
    sol = e.partial();
    fail_reason = e.what();
    status = 1;
  }

  CaseSummary cs = summarize(*sol);
  if (status != 0) cs.status = "nonconverged: " + fail_reason;

  std::vector<std::string> names;
  for (const auto& sp : spec.base.mixture.species) names.push_back(sp.name);
  const std::filesystem::path dir(spec.out_dir);
  write_text(dir / "fields.csv", fields_csv(*sol, si));
  write_text(dir / "axial.csv", axial_csv(*sol, si));
  write_text(dir / "summary.csv", summary_csv(cs, names, si));
  write_text(dir / "meta.txt", meta_text(spec, cs, sol->err_history));
  return status;
}

SweepSpec::Axis axis_from_string(const std::string& s) {
  if (s == "dphi") return SweepSpec::Axis::dphi;
  if (s == "dp") return SweepSpec::Axis::dp;
  if (s == "nbulk") return SweepSpec::Axis::nbulk;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

std::string axis_to_string(SweepSpec::Axis a) {
  switch (a) {
    case SweepSpec::Axis::dphi: return "dphi";
    case SweepSpec::Axis::dp: return "dp";
    case SweepSpec::Axis::nbulk: return "nbulk";
  }
  return "?";
}

CaseSpec sweep_point(const SweepSpec& spec, double value) {
  CaseSpec pt = spec.base;
  CaseOverrides ov;
  switch (spec.axis) {
    case SweepSpec::Axis::dphi: ov.dphi = value; break;
    case SweepSpec::Axis::dp: ov.dp = value; break;
    case SweepSpec::Axis::nbulk: ov.nbulk = value; break;
  }
  apply_overrides(pt, ov);
  return pt;
}

int run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  for (double v : spec.values)
    if (!std::isfinite(v)) throw std::invalid_argument("sweep values must be finite");

  const size_t n = spec.values.size();
  std::vector<CaseSummary> rows(n);
  std::atomic<size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t n_workers = std::min<size_t>(std::min<unsigned>(hw, 8), n);

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      CaseSpec pt = sweep_point(spec, spec.values[i]);
      try {
        auto sol = solve_steady(make_problem(pt));
        rows[i] = summarize(sol);
      } catch (const NonConvergenceError& e) {
        rows[i] = summarize(*e.partial());
        rows[i].ok = false;
        rows[i].status = std::string("nonconverged: ") + e.what();
      } catch (const std::exception& e) {
        rows[i] = failed_summary(pt, std::string("failed: ") + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // scaled columns use the cylinder C_u; nan for other shapes
  const auto& g = spec.base.base.geometry;
  double C_u = kNaN;
  if (g.kind == GeometryParams::Kind::cylinder) {
    const double Lam = spec.base.base.groups.Lambda;
    C_u = Lam * Lam * 16.0 / (std::pow(g.R, 4) * g.L);
  }

  std::vector<std::string> names;
  for (const auto& sp : spec.base.base.mixture.species) names.push_back(sp.name);
  std::string out = axis_to_string(spec.axis);
  out += ",status,converged,iterations,residual,dphi,dp,zeta_avg,u_avg,Q_eo,max_u,max_u_z";
  for (const auto& nm : names) out += ",I_" + nm;
  out += ",I_total";
  for (const auto& nm : names) out += ",t_" + nm;
  out += ",u_scaled,I_scaled,dp_scaled\n";
  for (size_t i = 0; i < n; ++i) {
    const CaseSummary& cs = rows[i];
    out += format_g17(spec.values[i]);
    out += ',' + sanitize(cs.status);
    out += ',' + std::string(cs.converged ? "1" : "0");
    out += ',' + std::to_string(cs.iterations);
    out += ',' + format_g17(cs.residual);
    out += ',' + format_g17(cs.dphi);
    out += ',' + format_g17(cs.dp);
    out += ',' + format_g17(cs.zeta_avg);
    out += ',' + format_g17(cs.u_avg);
    out += ',' + format_g17(cs.Q_eo);
    out += ',' + format_g17(cs.max_u);
    out += ',' + format_g17(cs.max_u_z);
    for (double I : cs.I) out += ',' + format_g17(I);
    out += ',' + format_g17(cs.I_total);
    for (double t : cs.t) out += ',' + format_g17(t);
    const double denom = C_u * cs.dphi;
    out += ',' + format_g17(cs.dphi != 0.0 ? cs.u_avg / denom : kNaN);
    out += ',' + format_g17(cs.dphi != 0.0 ? cs.I_total / cs.dphi : kNaN);
    out += ',' + format_g17(cs.dphi != 0.0 ? cs.dp / denom : kNaN);
    out += '\n';
  }
  std::filesystem::create_directories(spec.base.out_dir);
  write_text(std::filesystem::path(spec.base.out_dir) / "sweep.csv", out);

  bool any_ok = false;
  for (const auto& r : rows) any_ok = any_ok || r.ok;
  return any_ok ? 0 : 1;
}

}  // namespace poreflow
