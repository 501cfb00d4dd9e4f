#include "poreflow/axial.hpp"

#include <cmath>
#include <stdexcept>

#include "poreflow/radial.hpp"

namespace poreflow {

double bernoulli(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x + x * x / 12.0;
  if (x > 500.0) return x * std::exp(-x);
  return x / std::expm1(x);
}

AxialPotential axial_potential(const BoundaryConditions& bc, const PoreGeometry& geom,
                               const GeometricIntegrals& gi) {
  const int n = geom.size();
  AxialPotential p;
  p.phi_z.resize(n);
  p.dphi_z.resize(n);
  const double dphi = bc.dphi();
  for (int j = 0; j < n; ++j) {
    p.phi_z[j] = dphi * gi.dI_phiz[j] + bc.phi_out;
    p.dphi_z[j] = dphi / (geom.R[j] * geom.R[j] * gi.P_phiz);
  }
  return p;
}

TransportClosure closure_integrals(const Field2D& phi_r, const Field2D& y0, const Field2D& nbar,
                                   std::span<const RadialGrid> grids, const MixtureSpec& spec,
                                   const Field2D* u) {
  const int nr = phi_r.nr(), nz = phi_r.nz();
  const int ns = spec.count();
  TransportClosure c;
  c.H1.assign(ns, std::vector<double>(nz, 0.0));
  c.H2.assign(ns, std::vector<double>(nz, 0.0));
  const bool with_u = u != nullptr && !u->empty();
  for (int s = 0; s < ns; ++s) {
    const double z_a = spec.species[s].z;
    const double a_a = spec.species[s].a;
    for (int j = 0; j < nz; ++j) {
      double h1 = 0.0, h2 = 0.0;
      for (int i = 0; i < nr; ++i) {
        double f = nbar(i, j) * std::pow(y0(i, j), a_a) * std::exp(-z_a * phi_r(i, j)) *
                   grids[j].w[i];
        h1 += f;
        if (with_u) h2 += f * (*u)(i, j);
      }
      c.H1[s][j] = h1;
      c.H2[s][j] = h2;
    }
  }
  return c;
}

std::vector<double> boundary_factors(std::span<const double> n_bulk, const MixtureSpec& spec) {
  auto b = bulk_state(n_bulk, spec);
  std::vector<double> Q(n_bulk.size());
  for (size_t s = 0; s < Q.size(); ++s)
    Q[s] = b.y[s] * std::pow(b.y0, -spec.species[s].a);
  return Q;
}

AxialFactors solve_axial(const TransportClosure& closure, const AxialPotential& pot,
                         const BoundaryConditions& bc, const MixtureSpec& spec, double Pe,
                         std::span<const double> z) {
  const int nz = static_cast<int>(z.size());
  const int ns = spec.count();
  auto Q_out = boundary_factors(bc.n_out, spec);
  auto Q_in = boundary_factors(bc.n_in, spec);

  AxialFactors out;
  out.Q.assign(ns, std::vector<double>(nz));
  out.dQdz.assign(ns, {});
  out.flux.assign(ns, std::vector<double>(nz - 1));

  for (int s = 0; s < ns; ++s) {
    const double k = spec.species[s].k;
    const double z_a = spec.species[s].z;
    const auto& H1 = closure.H1[s];
    const auto& H2 = closure.H2[s];

    // per-face conductances D/dz and drift increments
    std::vector<double> cond(nz - 1), dpsi(nz - 1);
    for (int j = 0; j + 1 < nz; ++j) {
      double dz = z[j + 1] - z[j];
      double D = k * 0.5 * (H1[j] + H1[j + 1]);
      if (!(D > 0.0) || !std::isfinite(D))
        throw std::runtime_error("solve_axial: degenerate closure integral H1 for species " +
                                 spec.species[s].name + " near z index " + std::to_string(j));
      cond[j] = D / dz;
      dpsi[j] = z_a * (pot.phi_z[j + 1] - pot.phi_z[j]) -
                Pe * 0.5 * (H2[j] + H2[j + 1]) / D * dz;
    }

    std::vector<double> lower(nz - 1, 0.0), diag(nz, 1.0), upper(nz - 1, 0.0), rhs(nz, 0.0);
    rhs[0] = Q_out[s];
    rhs[nz - 1] = Q_in[s];
    for (int j = 1; j + 1 < nz; ++j) {
      double wl = cond[j - 1], wr = cond[j];
      lower[j - 1] = -wl * bernoulli(dpsi[j - 1]);
      upper[j] = -wr * bernoulli(-dpsi[j]);
      diag[j] = wl * bernoulli(-dpsi[j - 1]) + wr * bernoulli(dpsi[j]);
    }
    auto Q = solve_tridiagonal(lower, diag, upper, rhs);
    for (double& q : Q) {
      if (!std::isfinite(q))
        throw std::runtime_error("solve_axial: non-finite factor for species " +
                                 spec.species[s].name);
      if (q < 0.0) q = 0.0;
    }
    out.Q[s] = Q;
    out.dQdz[s] = gradient(z, Q);
    for (int j = 0; j + 1 < nz; ++j)
      out.flux[s][j] = cond[j] * (bernoulli(-dpsi[j]) * Q[j + 1] - bernoulli(dpsi[j]) * Q[j]);
  }
  return out;
}

}  // namespace poreflow
