#pragma once

#include <vector>

#include "poreflow/axial.hpp"
#include "poreflow/config.hpp"
#include "poreflow/fields.hpp"
#include "poreflow/geometry.hpp"
#include "poreflow/slices.hpp"

namespace poreflow {

/// p_r = Qcheck(r,z) - Qcheck(0,z) and the kernel itself.
struct RadialPressure {
  Field2D p_r;
  Field2D Qcheck;
};

RadialPressure pressure_radial(const SliceSet& slices,
                               const std::vector<std::vector<double>>& Q,
                               const MixtureSpec& spec);

/// EDL force/flow kernels K1, K2, K3 and the cumulative axial quadratures
/// feeding the pressure closure.
struct EDLKernels {
  Field2D K1, K2;
  std::vector<double> K3;    // int (K2 - K2(R)) r dr
  std::vector<double> Zint;  // int zeta r dr
  std::vector<double> I_Ez;  // int_0^z 16 Lambda^2 phi_z' Zint / R^4
  std::vector<double> I_K3;  // int_0^z 16 K3 / R^4
  std::vector<double> dI_Ez, dI_K3;  // the pointwise integrands of the above
};

EDLKernels edl_kernels(const SliceSet& slices, const std::vector<std::vector<double>>& Q,
                       const MixtureSpec& spec, const PoreGeometry& geom,
                       const AxialPotential& pot, const RadialPressure& rp, double Lambda);

struct AxialPressure {
  std::vector<double> p_z, dp_z, Psi, K4;
};

/// p_z = -(dp) dI_p - p_out - Psi + K4; dp_z is assembled pointwise from the
/// quadrature integrands so the resulting flow rate is constant in z.
AxialPressure pressure_axial(const EDLKernels& k, const GeometricIntegrals& gi,
                             const BoundaryConditions& bc, const PoreGeometry& geom);

/// u = dp_z (r^2 - R^2)/4 - phi_z' Lambda^2 zeta + K2(r) - K2(R).
Field2D velocity(const AxialPressure& ap, const AxialPotential& pot, const EDLKernels& k,
                 const SliceSet& slices, double Lambda);

/// Diagnostic radial velocity from continuity: w = -(1/r) int_0^r ddz u r dr.
Field2D radial_velocity(const Field2D& u, const PoreGeometry& geom,
                        std::span<const RadialGrid> grids);

}  // namespace poreflow
