#include "poreflow/slices.hpp"

namespace poreflow {

std::vector<RadialGrid> make_slice_grids(const PoreGeometry& geom, int n_r) {
  std::vector<RadialGrid> grids;
  grids.reserve(geom.size());
  for (int j = 0; j < geom.size(); ++j) grids.push_back(RadialGrid::uniform(geom.R[j], n_r));
  return grids;
}

void update_composition(SliceSet& slices, const std::vector<std::vector<double>>& Q,
                        const MixtureSpec& spec) {
  const int nr = slices.nr(), nz = slices.nz();
  const int ns = spec.count();
  if (slices.y0.empty()) {
    slices.y0 = Field2D(nr, nz, 1.0);
    slices.nbar = Field2D(nr, nz, 1.0);
    slices.q = Field2D(nr, nz, 0.0);
    slices.n.assign(ns, Field2D(nr, nz, 0.0));
  }
  std::vector<double> Qz(ns);
  for (int j = 0; j < nz; ++j) {
    for (int s = 0; s < ns; ++s) Qz[s] = Q[s][j];
    auto comp = slice_composition(Qz, slices.phi_r.column(j), spec);
    for (int i = 0; i < nr; ++i) {
      slices.y0(i, j) = comp.y0[i];
      slices.nbar(i, j) = comp.n_bar[i];
      slices.q(i, j) = comp.q[i];
      for (int s = 0; s < ns; ++s) slices.n[s](i, j) = comp.n[s][i];
    }
  }
}

Field2D ddz_physical(const Field2D& f, const PoreGeometry& geom,
                     std::span<const RadialGrid> grids) {
  const int nr = f.nr(), nz = f.nz();
  Field2D out = ddz(f, geom.z);
  std::vector<double> col(nr), dfdr;
  for (int j = 0; j < nz; ++j) {
    if (geom.dRdz[j] == 0.0) continue;
    for (int i = 0; i < nr; ++i) col[i] = f(i, j);
    dfdr = gradient(grids[j].r, col);
    for (int i = 0; i < nr; ++i) {
      double xi = grids[j].r[i] / grids[j].R;
      out(i, j) -= xi * geom.dRdz[j] * dfdr[i];
    }
  }
  return out;
}

}  // namespace poreflow
