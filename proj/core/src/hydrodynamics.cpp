#include "poreflow/hydrodynamics.hpp"

#include <cmath>

namespace poreflow {

namespace {

// W_s = nbar y0^a and G_s(r) = int_0^r exp(-z phi_r) d_r W_s dr for one slice
struct SliceKernels {
  std::vector<double> W, E, G;
};

SliceKernels species_kernels(const SliceSet& slices, const SpeciesSpec& sp,
                             const RadialGrid& grid, int j) {
  const int nr = slices.nr();
  SliceKernels k;
  k.W.resize(nr);
  k.E.resize(nr);
  for (int i = 0; i < nr; ++i) {
    k.W[i] = slices.nbar(i, j) * std::pow(slices.y0(i, j), sp.a);
    k.E[i] = std::exp(-sp.z * slices.phi_r(i, j));
  }
  auto dW = gradient(grid.r, k.W);
  std::vector<double> integ(nr);
  for (int i = 0; i < nr; ++i) integ[i] = k.E[i] * dW[i];
  k.G = cumtrapz(grid.r, integ);
  return k;
}

}  // namespace

RadialPressure pressure_radial(const SliceSet& slices,
                               const std::vector<std::vector<double>>& Q,
                               const MixtureSpec& spec) {
  const int nr = slices.nr(), nz = slices.nz();
  RadialPressure rp;
  rp.Qcheck = Field2D(nr, nz);
  rp.p_r = Field2D(nr, nz);
  for (int j = 0; j < nz; ++j) {
    for (int s = 0; s < spec.count(); ++s) {
      auto k = species_kernels(slices, spec.species[s], slices.grids[j], j);
      for (int i = 0; i < nr; ++i)
        rp.Qcheck(i, j) += Q[s][j] * (k.W[i] * k.E[i] - k.G[i]);
    }
    const double axis = rp.Qcheck(0, j);
    for (int i = 0; i < nr; ++i) rp.p_r(i, j) = rp.Qcheck(i, j) - axis;
  }
  return rp;
}

EDLKernels edl_kernels(const SliceSet& slices, const std::vector<std::vector<double>>& Q,
                       const MixtureSpec& spec, const PoreGeometry& geom,
                       const AxialPotential& pot, const RadialPressure& rp, double Lambda) {
  const int nr = slices.nr(), nz = slices.nz();
  const int ns = spec.count();

  // per-species fields entering the z-derivatives of the EDL force density
  std::vector<Field2D> QW(ns, Field2D(nr, nz)), QG(ns, Field2D(nr, nz));
  std::vector<Field2D> E(ns, Field2D(nr, nz));
  for (int j = 0; j < nz; ++j) {
    for (int s = 0; s < ns; ++s) {
      auto k = species_kernels(slices, spec.species[s], slices.grids[j], j);
      for (int i = 0; i < nr; ++i) {
        QW[s](i, j) = Q[s][j] * k.W[i];
        QG[s](i, j) = Q[s][j] * k.G[i];
        E[s](i, j) = k.E[i];
      }
    }
  }
  Field2D dQch = ddz_physical(rp.Qcheck, geom, slices.grids);
  std::vector<Field2D> dQW(ns), dQG(ns);
  for (int s = 0; s < ns; ++s) {
    dQW[s] = ddz_physical(QW[s], geom, slices.grids);
    dQG[s] = ddz_physical(QG[s], geom, slices.grids);
  }

  EDLKernels out;
  out.K1 = Field2D(nr, nz);
  out.K2 = Field2D(nr, nz);
  out.K3.resize(nz);
  out.Zint.resize(nz);
  out.I_Ez.resize(nz);
  out.I_K3.resize(nz);
  out.dI_Ez.resize(nz);
  out.dI_K3.resize(nz);

  std::vector<double> f(nr), g(nr);
  for (int j = 0; j < nz; ++j) {
    const auto& grid = slices.grids[j];
    for (int i = 0; i < nr; ++i) {
      double s_acc = -dQch(0, j);
      for (int s = 0; s < ns; ++s) s_acc += dQW[s](i, j) * E[s](i, j) - dQG[s](i, j);
      f[i] = s_acc * grid.r[i];
    }
    auto K1 = cumtrapz(grid.r, f);
    g[0] = 0.0;  // K1 = O(r^2), so the K2 integrand vanishes linearly at the axis
    for (int i = 1; i < nr; ++i) g[i] = K1[i] / grid.r[i];
    auto K2 = cumtrapz(grid.r, g);
    for (int i = 0; i < nr; ++i) {
      out.K1(i, j) = K1[i];
      out.K2(i, j) = K2[i];
    }
    out.K3[j] = grid.integrate(K2) - K2.back() * 0.5 * grid.R * grid.R;
    out.Zint[j] = grid.integrate(slices.zeta.column(j));

    const double R4 = std::pow(geom.R[j], 4);
    out.dI_Ez[j] = 16.0 * Lambda * Lambda * pot.dphi_z[j] * out.Zint[j] / R4;
    out.dI_K3[j] = 16.0 * out.K3[j] / R4;
  }
  out.I_Ez = cumtrapz(geom.z, out.dI_Ez);
  out.I_K3 = cumtrapz(geom.z, out.dI_K3);
  return out;
}

AxialPressure pressure_axial(const EDLKernels& k, const GeometricIntegrals& gi,
                             const BoundaryConditions& bc, const PoreGeometry& geom) {
  const int nz = geom.size();
  const double dp = bc.dp();
  const double totE = k.I_Ez.back();
  const double totK = k.I_K3.back();
  AxialPressure ap;
  ap.p_z.resize(nz);
  ap.dp_z.resize(nz);
  ap.Psi.resize(nz);
  ap.K4.resize(nz);
  for (int j = 0; j < nz; ++j) {
    ap.Psi[j] = k.I_Ez[j] - totE * gi.dI_p[j];
    ap.K4[j] = k.I_K3[j] - totK * gi.dI_p[j];
    ap.p_z[j] = -dp * gi.dI_p[j] - bc.p_out - ap.Psi[j] + ap.K4[j];
    const double w = 1.0 / (std::pow(geom.R[j], 4) * gi.P_p);
    ap.dp_z[j] = -dp * w - (k.dI_Ez[j] - totE * w) + (k.dI_K3[j] - totK * w);
  }
  return ap;
}

Field2D velocity(const AxialPressure& ap, const AxialPotential& pot, const EDLKernels& k,
                 const SliceSet& slices, double Lambda) {
  const int nr = slices.nr(), nz = slices.nz();
  Field2D u(nr, nz);
  for (int j = 0; j < nz; ++j) {
    const auto& grid = slices.grids[j];
    const double R2 = grid.R * grid.R;
    const double K2w = k.K2(nr - 1, j);
    for (int i = 0; i < nr; ++i) {
      double r = grid.r[i];
      u(i, j) = ap.dp_z[j] * 0.25 * (r * r - R2) -
                pot.dphi_z[j] * Lambda * Lambda * slices.zeta(i, j) + k.K2(i, j) - K2w;
    }
  }
  return u;
}

Field2D radial_velocity(const Field2D& u, const PoreGeometry& geom,
                        std::span<const RadialGrid> grids) {
  const int nr = u.nr(), nz = u.nz();
  Field2D du = ddz_physical(u, geom, grids);
  Field2D w(nr, nz);
  std::vector<double> f(nr);
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) f[i] = du(i, j) * grids[j].r[i];
    auto cum = cumtrapz(grids[j].r, f);
    w(0, j) = 0.0;
    for (int i = 1; i < nr; ++i) w(i, j) = -cum[i] / grids[j].r[i];
  }
  return w;
}

}  // namespace poreflow
