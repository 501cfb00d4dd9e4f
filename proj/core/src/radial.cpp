#include "poreflow/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poreflow {

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const size_t n = diag.size();
  if (lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
    throw std::invalid_argument("solve_tridiagonal: inconsistent band sizes");
  std::vector<double> c(n - 1), d(n), x(n);
  double piv = diag[0];
  if (piv == 0.0) throw std::runtime_error("solve_tridiagonal: singular pivot");
  c[0] = upper[0] / piv;
  d[0] = rhs[0] / piv;
  for (size_t i = 1; i < n; ++i) {
    piv = diag[i] - lower[i - 1] * c[i - 1];
    if (piv == 0.0) throw std::runtime_error("solve_tridiagonal: singular pivot");
    if (i < n - 1) c[i] = upper[i] / piv;
    d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / piv;
  }
  x[n - 1] = d[n - 1];
  for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

double electroneutrality_defect(std::span<const double> q, const RadialGrid& grid, double Lambda,
                                double gamma, double sigma) {
  return grid.integrate(q) + Lambda * Lambda * gamma * sigma * grid.R;
}

namespace {

struct RadialProblem {
  std::span<const double> Q;
  double Lambda2;
  double wall_flux;  // R * gamma * sigma
  const RadialGrid& grid;
  const MixtureSpec& spec;

  // Source S(phi) = q(phi)/Lambda^2 at every node.
  std::vector<double> source(std::span<const double> phi, SliceComposition* comp_out = nullptr) const {
    auto comp = slice_composition(Q, phi, spec);
    std::vector<double> s(comp.q);
    for (double& v : s) v /= Lambda2;
    if (comp_out) *comp_out = std::move(comp);
    return s;
  }

  // dS/dphi at one node, from the implicit derivative of the y0 root:
  // y0' = sum z_a y_a / (1 + sum a_a y_a / y0), y_a' = y_a (a_a y0'/y0 - z_a).
  double source_derivative(const SliceComposition& comp, int i) const {
    const int ns = spec.count();
    double zy = 0.0, ay = 0.0;
    for (int s = 0; s < ns; ++s) {
      zy += spec.species[s].z * comp.y[s][i];
      ay += spec.species[s].a * comp.y[s][i];
    }
    const double y0 = comp.y0[i];
    const double dy0 = zy / (1.0 + ay / y0);
    double dzy = 0.0, dvy = 0.0;
    for (int s = 0; s < ns; ++s) {
      const auto& sp = spec.species[s];
      const double dy = comp.y[s][i] * (sp.a * dy0 / y0 - sp.z);
      dzy += sp.z * dy;
      dvy += (sp.v - spec.v0) * dy;
    }
    const double nb = comp.n_bar[i];
    const double dnb = -nb * nb * dvy;
    return (dnb * zy + nb * dzy) / Lambda2;
  }

  // F(phi) = A phi - wall data - V S(phi)
  std::vector<double> residual(std::span<const double> phi,
                               std::span<const double> S) const {
    const int n = grid.size();
    const double h = grid.h;
    std::vector<double> F(n);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      if (i > 0) acc += (grid.r[i] - 0.5 * h) / h * (phi[i] - phi[i - 1]);
      if (i < n - 1) acc -= (grid.r[i] + 0.5 * h) / h * (phi[i + 1] - phi[i]);
      if (i == n - 1) acc -= wall_flux;
      F[i] = acc - grid.w[i] * S[i];
    }
    return F;
  }
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Newton with step damping; returns false if it could not converge.
bool newton_solve(const RadialProblem& prob, std::vector<double>& phi, const SolverConfig& cfg,
                  double& res_norm, int& iters, SliceComposition& comp_out) {
  const int n = prob.grid.size();
  const double h = prob.grid.h;
  std::vector<double> lower(n - 1), diag(n), upper(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    double face = (prob.grid.r[i] + 0.5 * h) / h;
    upper[i] = -face;
    lower[i] = -face;
  }

  SliceComposition comp;
  auto S = prob.source(phi, &comp);
  auto F = prob.residual(phi, S);
  res_norm = max_abs(F);
  const bool classical = prob.spec.variant == Variant::classical;

  for (iters = 0; iters < cfg.newton_max_iter; ++iters) {
    // diagonal of A plus the (negative-definite) source derivative
    for (int i = 0; i < n; ++i) {
      double d = 0.0;
      if (i > 0) d += (prob.grid.r[i] - 0.5 * h) / h;
      if (i < n - 1) d += (prob.grid.r[i] + 0.5 * h) / h;
      double dS;
      if (classical) {
        dS = 0.0;
        double E = 0.0;  // exp(-phi), shared between the z = +1 and z = -1 species
        for (int s = 0; s < prob.spec.count(); ++s) {
          const double z = prob.spec.species[s].z;
          double ez;
          if (z == 1.0 || z == -1.0) {
            if (E == 0.0) E = std::exp(-phi[i]);
            ez = z > 0.0 ? E : 1.0 / E;
          } else {
            ez = std::exp(-z * phi[i]);
          }
          dS -= z * z * prob.Q[s] * ez / prob.Lambda2;
        }
      } else {
        dS = prob.source_derivative(comp, i);
      }
      diag[i] = d - prob.grid.w[i] * dS;
    }

    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -F[i];
    auto step = solve_tridiagonal(lower, diag, upper, rhs);

    // cap the step so the exponential source cannot overflow in one update
    const double step_norm = max_abs(step);
    if (step_norm > 2.0)
      for (double& v : step) v *= 2.0 / step_norm;

    double s = 1.0;
    bool accepted = false;
    std::vector<double> trial(n), Strial, Ftrial;
    SliceComposition comptrial;
    for (int halving = 0; halving <= 8; ++halving) {
      for (int i = 0; i < n; ++i) trial[i] = phi[i] + s * step[i];
      try {
        Strial = prob.source(trial, &comptrial);
        Ftrial = prob.residual(trial, Strial);
      } catch (const std::runtime_error&) {
        s *= 0.5;
        continue;
      }
      if (max_abs(Ftrial) <= res_norm || max_abs(step) * s < cfg.newton_tol) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) return false;
    phi = trial;
    S = Strial;
    comp = std::move(comptrial);
    F = Ftrial;
    res_norm = max_abs(F);
    if (max_abs(step) * s < cfg.newton_tol) {
      comp_out = std::move(comp);
      return true;
    }
  }
  return false;
}

}  // namespace

RadialPotential solve_radial(std::span<const double> Q, double sigma, double Lambda, double gamma,
                             const RadialGrid& grid, const MixtureSpec& spec,
                             const SolverConfig& cfg, std::span<const double> guess) {
  if (!(Lambda > 0.0)) throw std::invalid_argument("solve_radial: Lambda must be positive");
  if (static_cast<int>(Q.size()) != spec.count())
    throw std::invalid_argument("solve_radial: Q size does not match species count");
  for (double q : Q)
    if (q < 0.0) throw std::invalid_argument("solve_radial: Q must be non-negative");
  bool charged = false;
  for (int s = 0; s < spec.count(); ++s)
    if (spec.species[s].z != 0.0 && Q[s] > 0.0) charged = true;
  if (!charged && sigma != 0.0)
    throw std::runtime_error("solve_radial: wall charge cannot be screened without ions");

  RadialPotential out;
  out.phi_r.assign(grid.size(), 0.0);
  if (!guess.empty()) {
    if (static_cast<int>(guess.size()) != grid.size())
      throw std::invalid_argument("solve_radial: guess size mismatch");
    std::copy(guess.begin(), guess.end(), out.phi_r.begin());
  }

  RadialProblem prob{Q, Lambda * Lambda, grid.R * gamma * sigma, grid, spec};
  double res = 0.0;
  int iters = 0;
  if (!newton_solve(prob, out.phi_r, cfg, res, iters, out.comp)) {
    // continuation in the wall charge from an uncharged start, refined on failure
    bool ok = false;
    int total = iters;
    for (int steps = 8; steps <= 512 && !ok; steps *= 4) {
      std::fill(out.phi_r.begin(), out.phi_r.end(), 0.0);
      ok = true;
      for (int k = 1; k <= steps && ok; ++k) {
        prob.wall_flux = grid.R * gamma * sigma * k / steps;
        ok = newton_solve(prob, out.phi_r, cfg, res, iters, out.comp);
        total += iters;
      }
    }
    iters = total;
    if (!ok) {
      std::string msg = "solve_radial: Newton iteration failed, residual " + std::to_string(res) +
                        " (R=" + std::to_string(grid.R) + ", sigma=" + std::to_string(sigma) +
                        ", Q=";
      for (double q : Q) msg += std::to_string(q) + " ";
      throw std::runtime_error(msg + ")");
    }
  }
  out.residual_norm = res;
  out.iterations = iters;
  out.zeta.resize(grid.size());
  double wall = out.phi_r.back();
  for (int i = 0; i < grid.size(); ++i) out.zeta[i] = out.phi_r[i] - wall;
  return out;
}

}  // namespace poreflow
