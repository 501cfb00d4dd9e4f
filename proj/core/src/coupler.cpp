#include "poreflow/coupler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>
#include <cstdio>
#include <cstdlib>

#include "poreflow/radial.hpp"

namespace poreflow {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_cylinder(const PoreGeometry& geom) {
  for (double d : geom.dRdz)
    if (d != 0.0) return false;
  for (double R : geom.R)
    if (R != geom.R.front()) return false;
  return true;
}

void radial_sweep(SteadySolution& sol, const std::vector<std::vector<double>>& Q,
                  const Problem& prob) {
  const int nz = sol.slices.nz();
  const int ns = prob.mixture.count();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_workers = static_cast<int>(std::min<unsigned>(hw, 8));

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    std::vector<double> Qz(ns);
    for (;;) {
      int j = next.fetch_add(1);
      if (j >= nz) return;
      try {
        for (int s = 0; s < ns; ++s) Qz[s] = Q[s][j];
        auto rp = solve_radial(Qz, prob.geometry.sigma[j], prob.groups.Lambda, prob.groups.gamma,
                               sol.slices.grids[j], prob.mixture, prob.config,
                               sol.slices.phi_r.column(j));
        std::copy(rp.phi_r.begin(), rp.phi_r.end(), sol.slices.phi_r.col(j));
        std::copy(rp.zeta.begin(), rp.zeta.end(), sol.slices.zeta.col(j));
        const int nr = sol.slices.nr();
        for (int i = 0; i < nr; ++i) {
          sol.slices.y0(i, j) = rp.comp.y0[i];
          sol.slices.nbar(i, j) = rp.comp.n_bar[i];
          sol.slices.q(i, j) = rp.comp.q[i];
          for (int s = 0; s < ns; ++s) sol.slices.n[s](i, j) = rp.comp.n[s][i];
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(nz);
        return;
      }
    }
  };
  if (n_workers == 1 || nz < 4) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

// Least-squares coefficients gamma minimizing ||f - dF gamma||, via lightly
// regularized normal equations (history depth is at most 4).
std::vector<double> anderson_coefficients(const std::vector<std::vector<double>>& dF,
                                          const std::vector<double>& f) {
  const int m = static_cast<int>(dF.size());
  if (m == 0) return {};
  std::vector<std::vector<double>> A(m, std::vector<double>(m + 1, 0.0));
  double trace = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      double s = 0.0;
      for (size_t i = 0; i < f.size(); ++i) s += dF[a][i] * dF[b][i];
      A[a][b] = A[b][a] = s;
    }
    trace += A[a][a];
    double s = 0.0;
    for (size_t i = 0; i < f.size(); ++i) s += dF[a][i] * f[i];
    A[a][m] = s;
  }
  if (!(trace > 0.0)) return {};
  const double reg = 1e-12 * trace;
  for (int a = 0; a < m; ++a) A[a][a] += reg;

  for (int col = 0; col < m; ++col) {  // Gaussian elimination, partial pivoting
    int piv = col;
    for (int rr = col + 1; rr < m; ++rr)
      if (std::abs(A[rr][col]) > std::abs(A[piv][col])) piv = rr;
    std::swap(A[piv], A[col]);
    if (A[col][col] == 0.0) return {};
    for (int rr = col + 1; rr < m; ++rr) {
      const double fct = A[rr][col] / A[col][col];
      for (int cc = col; cc <= m; ++cc) A[rr][cc] -= fct * A[col][cc];
    }
  }
  std::vector<double> gamma(m);
  for (int rr = m - 1; rr >= 0; --rr) {
    double s = A[rr][m];
    for (int cc = rr + 1; cc < m; ++cc) s -= A[rr][cc] * gamma[cc];
    gamma[rr] = s / A[rr][rr];
  }
  return gamma;
}

void hydro_update(SteadySolution& sol, const std::vector<std::vector<double>>& Q,
                  const Problem& prob, double blend = 1.0) {
  sol.radial_p = pressure_radial(sol.slices, Q, prob.mixture);
  sol.kernels = edl_kernels(sol.slices, Q, prob.mixture, prob.geometry, sol.axial_pot,
                            sol.radial_p, prob.groups.Lambda);
  sol.axial_p = pressure_axial(sol.kernels, sol.geom_ints, prob.bc, prob.geometry);
  auto u_new = velocity(sol.axial_p, sol.axial_pot, sol.kernels, sol.slices, prob.groups.Lambda);
  if (blend < 1.0 && !sol.u.empty()) {
    for (size_t i = 0; i < u_new.data().size(); ++i)
      u_new.data()[i] = (1.0 - blend) * sol.u.data()[i] + blend * u_new.data()[i];
  }
  sol.u = std::move(u_new);
}

}  // namespace

void Problem::validate() const {
  geometry.validate();
  mixture.validate();
  groups.validate();
  config.validate();
  const size_t ns = static_cast<size_t>(mixture.count());
  if (bc.n_out.size() != ns || bc.n_in.size() != ns)
    throw std::invalid_argument("boundary concentrations must match the species count");
  for (double n : bc.n_out)
    if (!(n >= 0.0)) throw std::invalid_argument("outlet concentrations must be non-negative");
  for (double n : bc.n_in)
    if (!(n >= 0.0)) throw std::invalid_argument("inlet concentrations must be non-negative");
}

namespace {

SteadySolution solve_steady_once(const Problem& prob,
                                 const std::vector<std::vector<double>>* Q_init) {
  const int ns = prob.mixture.count();
  const int nz = prob.geometry.size();
  const int nr = prob.config.n_r;
  const double L = prob.geometry.L;

  SteadySolution sol;
  sol.problem = prob;
  sol.geom_ints = geometric_integrals(prob.geometry);
  sol.slices.grids = make_slice_grids(prob.geometry, nr);
  sol.slices.phi_r = Field2D(nr, nz, 0.0);
  sol.slices.zeta = Field2D(nr, nz, 0.0);
  sol.axial_pot = axial_potential(prob.bc, prob.geometry, sol.geom_ints);

  // initial factors: linear interpolation of the Dirichlet data
  auto Q_out = boundary_factors(prob.bc.n_out, prob.mixture);
  auto Q_in = boundary_factors(prob.bc.n_in, prob.mixture);
  std::vector<std::vector<double>> Q(ns, std::vector<double>(nz));
  if (Q_init) {
    Q = *Q_init;
    for (int s = 0; s < ns; ++s) {
      Q[s][0] = Q_out[s];
      Q[s][nz - 1] = Q_in[s];
    }
  } else {
    for (int s = 0; s < ns; ++s)
      for (int j = 0; j < nz; ++j) {
        double t = prob.geometry.z[j] / L;
        Q[s][j] = (1.0 - t) * Q_out[s] + t * Q_in[s];
      }
  }

  const double omega = prob.config.relaxation;
  const size_t dim = static_cast<size_t>(ns) * nz;
  std::vector<double> x(dim), resid(dim);
  for (int s = 0; s < ns; ++s)
    for (int j = 0; j < nz; ++j) x[static_cast<size_t>(s) * nz + j] = Q[s][j];
  // Anderson acceleration history (differences of iterates and residuals)
  constexpr int kAndersonDepth = 4;
  std::vector<std::vector<double>> dX, dF;
  std::vector<double> x_prev, f_prev;

  update_composition(sol.slices, Q, prob.mixture);  // allocates the composition fields
  for (int it = 0; it < prob.config.picard_max_iter; ++it) {
    radial_sweep(sol, Q, prob);  // also refreshes the composition at (Q, phi_r)
    sol.closure = closure_integrals(sol.slices.phi_r, sol.slices.y0, sol.slices.nbar,
                                    sol.slices.grids, prob.mixture,
                                    sol.u.empty() ? nullptr : &sol.u);
    sol.factors = solve_axial(sol.closure, sol.axial_pot, prob.bc, prob.mixture,
                              prob.groups.Pe, prob.geometry.z);

    double err = 0.0;
    for (int s = 0; s < ns; ++s)
      for (int j = 0; j < nz; ++j) {
        const double r = sol.factors.Q[s][j] - Q[s][j];
        resid[static_cast<size_t>(s) * nz + j] = r;
        err = std::max(err, std::abs(r));
      }
    sol.err_history.push_back(err);
    sol.iterations = it + 1;
    if (err < prob.config.picard_tol) {
      sol.converged = true;
      hydro_update(sol, Q, prob);  // first iteration may converge before any hydro pass
      break;
    }

    // Anderson-accelerated update of the flattened factors
    if (!x_prev.empty()) {
      std::vector<double> dx(dim), df(dim);
      for (size_t i = 0; i < dim; ++i) {
        dx[i] = x[i] - x_prev[i];
        df[i] = resid[i] - f_prev[i];
      }
      dX.push_back(std::move(dx));
      dF.push_back(std::move(df));
      if (static_cast<int>(dX.size()) > kAndersonDepth) {
        dX.erase(dX.begin());
        dF.erase(dF.begin());
      }
    }
    x_prev = x;
    f_prev = resid;

    std::vector<double> gamma = anderson_coefficients(dF, resid);
    for (size_t i = 0; i < dim; ++i) x[i] += omega * resid[i];
    for (size_t m = 0; m < gamma.size(); ++m)
      for (size_t i = 0; i < dim; ++i) x[i] -= gamma[m] * (dX[m][i] + omega * dF[m][i]);
    // keep the iterate strictly positive: a zero factor makes the wall charge
    // unscreenable and the radial potential log-divergent
    for (int s = 0; s < ns; ++s) {
      const double floor = 1e-12 * std::max(Q_out[s], Q_in[s]);
      for (int j = 0; j < nz; ++j) {
        double& v = x[static_cast<size_t>(s) * nz + j];
        if (!(v > floor)) v = floor;
      }
    }
    // boundary values are Dirichlet data, never extrapolated
    for (int s = 0; s < ns; ++s) {
      x[static_cast<size_t>(s) * nz] = Q_out[s];
      x[static_cast<size_t>(s) * nz + nz - 1] = Q_in[s];
    }
    for (int s = 0; s < ns; ++s)
      for (int j = 0; j < nz; ++j) Q[s][j] = x[static_cast<size_t>(s) * nz + j];

    update_composition(sol.slices, Q, prob.mixture);
    hydro_update(sol, Q, prob, prob.config.u_relaxation);
    if (std::getenv("POREFLOW_TRACE")) {
      double umax = 0.0, qmin = std::numeric_limits<double>::infinity();
      for (double v : sol.u.data()) umax = std::max(umax, std::abs(v));
      for (auto& qs : Q)
        for (double v : qs) qmin = std::min(qmin, v);
      std::fprintf(stderr, "it=%d err=%.3e umax=%.3e qmin=%.3e dphi=%g\n", it, err, umax, qmin,
                   prob.bc.dphi());
    }
  }

  // consistency pass: transport factors and fluxes on the final velocity field
  hydro_update(sol, Q, prob);
  sol.closure = closure_integrals(sol.slices.phi_r, sol.slices.y0, sol.slices.nbar,
                                  sol.slices.grids, prob.mixture, &sol.u);
  sol.factors = solve_axial(sol.closure, sol.axial_pot, prob.bc, prob.mixture, prob.groups.Pe,
                            prob.geometry.z);
  sol.w = radial_velocity(sol.u, prob.geometry, sol.slices.grids);
  sol.p = Field2D(nr, nz);
  for (int j = 0; j < nz; ++j)
    for (int i = 0; i < nr; ++i) sol.p(i, j) = sol.radial_p.p_r(i, j) + sol.axial_p.p_z[j];

  if (!sol.converged) {
    std::string msg = "picard iteration did not converge after " +
                      std::to_string(sol.iterations) +
                      " iterations (residual " + std::to_string(sol.err_history.back()) + ")";
    throw NonConvergenceError(msg, std::make_shared<SteadySolution>(std::move(sol)));
  }
  return sol;
}

}  // namespace

SteadySolution solve_steady(const Problem& prob) {
  prob.validate();
  try {
    return solve_steady_once(prob, nullptr);
  } catch (const std::runtime_error&) {
    // strongly driven cases can diverge from a cold start; retry with a damped
    // velocity feedback, then ramp the applied voltage and pressure while
    // warm-starting each step from the previous one
    std::exception_ptr last;
    struct Attempt {
      int steps;
      double u_relax;
    };
    for (const auto& [steps, u_relax] : {Attempt{1, 0.25}, {8, 0.25}, {16, 0.1}}) {
      Problem sub = prob;
      sub.config.u_relaxation = std::min(sub.config.u_relaxation, u_relax);
      std::vector<std::vector<double>> Q;
      try {
        for (int k = 1; k <= steps; ++k) {
          const double t = static_cast<double>(k) / steps;
          sub.bc.phi_in = prob.bc.phi_out + t * prob.bc.dphi();
          sub.bc.p_in = prob.bc.p_out + t * prob.bc.dp();
          auto sol = solve_steady_once(sub, Q.empty() ? nullptr : &Q);
          if (k == steps) return sol;
          Q = sol.factors.Q;
        }
      } catch (const std::runtime_error&) {
        last = std::current_exception();
      }
    }
    std::rethrow_exception(last);
  }
}

std::vector<double> current_at(const SteadySolution& sol, double z_S) {
  const auto& z = sol.problem.geometry.z;
  const int nf = static_cast<int>(z.size()) - 1;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nf; ++j) {
    double d = std::abs(0.5 * (z[j] + z[j + 1]) - z_S);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  const int ns = sol.problem.mixture.count();
  std::vector<double> I(ns);
  for (int s = 0; s < ns; ++s)
    I[s] = two_pi * sol.problem.mixture.species[s].z * sol.factors.flux[s][best];
  return I;
}

double total_current_at(const SteadySolution& sol, double z_S) {
  auto I = current_at(sol, z_S);
  double tot = 0.0;
  for (double v : I) tot += v;
  return tot;
}

std::vector<double> flow_rate_profile(const SteadySolution& sol) {
  const int nz = sol.slices.nz();
  std::vector<double> F(nz);
  for (int j = 0; j < nz; ++j) F[j] = sol.slices.grids[j].integrate(sol.u.column(j));
  return F;
}

FlowDecomposition flow_decomposition(const SteadySolution& sol) {
  const auto& geom = sol.problem.geometry;
  if (!is_cylinder(geom))
    throw std::runtime_error("flow decomposition is defined for cylindrical pores only");
  const double R = geom.R.front();
  const double R4 = R * R * R * R;
  const double L = geom.L;
  const double Lam2 = sol.problem.groups.Lambda * sol.problem.groups.Lambda;

  FlowDecomposition d;
  d.zeta_avg = trapz(geom.z, sol.kernels.Zint);
  d.u_PF = sol.problem.bc.dp() * R4 / 16.0;
  d.u_HS = -Lam2 * (sol.problem.bc.dphi() / L) * d.zeta_avg;
  d.u_EDL = trapz(geom.z, sol.kernels.K3);
  auto F = flow_rate_profile(sol);
  d.u_total = trapz(geom.z, F);
  d.defect = std::abs(d.u_total - (d.u_PF + d.u_HS + d.u_EDL));
  d.C_u = Lam2 * 16.0 / (R4 * L);
  return d;
}

CurrentDecomposition current_decomposition(const SteadySolution& sol) {
  const auto& geom = sol.problem.geometry;
  const auto& bc = sol.problem.bc;
  const auto& spec = sol.problem.mixture;
  if (!is_cylinder(geom))
    throw std::runtime_error("current decomposition is defined for cylindrical pores only");
  for (size_t s = 0; s < bc.n_out.size(); ++s)
    if (bc.n_out[s] != bc.n_in[s])
      throw std::runtime_error(
          "current decomposition requires equal bulk concentrations at both ends");

  const double R = geom.R.front();
  const double R2 = R * R, R4 = R2 * R2;
  const double L = geom.L;
  const double Pe = sol.problem.groups.Pe;
  const double Lam2 = sol.problem.groups.Lambda * sol.problem.groups.Lambda;
  const double dphi = bc.dphi(), dp = bc.dp();
  const double zeta_avg = trapz(geom.z, sol.kernels.Zint);
  const double u_EDL = trapz(geom.z, sol.kernels.K3);
  const auto bulk = bulk_state(bc.n_out, spec);

  const int ns = spec.count();
  CurrentDecomposition d;
  d.I_E.resize(ns);
  d.I_P.resize(ns);
  d.I_C.resize(ns);
  d.C.resize(ns);
  for (int s = 0; s < ns; ++s) {
    const auto& sp = spec.species[s];
    const double n_out = bc.n_out[s];
    d.I_E[s] = two_pi * n_out * (dphi / L) *
               (sp.z * sp.z * sp.k * 0.5 * R2 + sp.z * Pe * Lam2 * zeta_avg / L);
    d.I_P[s] = -sp.z * two_pi * Pe * n_out * dp * R4 / (16.0 * L);
    d.I_C[s] = sp.z * two_pi * sp.k * bulk.n_bar * std::pow(bulk.y0, sp.a) * 0.5 * R2 *
                   sol.factors.dQdz[s][0] -
               sp.z * two_pi * Pe * n_out * u_EDL / L;
    d.C[s] = sp.k * 8.0 / (Pe * R2) + Lam2 * zeta_avg * 16.0 / (L * R4);
  }
  return d;
}

TransportMetrics transport_metrics(const SteadySolution& sol, double z_eval) {
  TransportMetrics m;
  auto I = current_at(sol, z_eval);
  double tot = 0.0;
  for (double v : I) tot += v;
  if (tot == 0.0) throw std::runtime_error("transport numbers are undefined: zero total current");
  const double dphi = sol.problem.bc.dphi();
  m.t.resize(I.size());
  m.conductance.resize(I.size());
  for (size_t s = 0; s < I.size(); ++s) {
    m.t[s] = I[s] / tot;
    m.conductance[s] = dphi != 0.0 ? I[s] / dphi : 0.0;
  }
  const auto& z = sol.problem.geometry.z;
  int j = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(z.size()); ++k) {
    double dd = std::abs(z[k] - z_eval);
    if (dd < best) {
      best = dd;
      j = k;
    }
  }
  m.Q_eo = two_pi * sol.slices.grids[j].integrate(sol.u.column(j));
  return m;
}

}  // namespace poreflow
