#pragma once

#include <span>
#include <vector>

#include "poreflow/fields.hpp"
#include "poreflow/geometry.hpp"
#include "poreflow/mixture.hpp"

namespace poreflow {

/// Radial fields of all slices on the logical (r/R, z) rectangle. Column j
/// lives on grids[j], a uniform grid on [0, R(z_j)] with a shared node count.
struct SliceSet {
  std::vector<RadialGrid> grids;
  Field2D phi_r, zeta;
  Field2D y0, nbar, q;
  std::vector<Field2D> n;  // molar densities per species

  int nr() const { return phi_r.nr(); }
  int nz() const { return phi_r.nz(); }
};

/// Radial grids scaled to R(z) with a common node count.
std::vector<RadialGrid> make_slice_grids(const PoreGeometry& geom, int n_r);

/// Fills the composition fields of `slices` from the axial factors Q[s][z]
/// and the current phi_r field.
void update_composition(SliceSet& slices, const std::vector<std::vector<double>>& Q,
                        const MixtureSpec& spec);

/// d/dz at fixed physical radius r of a logical-rectangle field:
/// ddz|_r f = ddz|_xi f - (xi R'/R) d_r f  with xi = r/R(z).
Field2D ddz_physical(const Field2D& f, const PoreGeometry& geom,
                     std::span<const RadialGrid> grids);

}  // namespace poreflow
