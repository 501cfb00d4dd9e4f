#pragma once

#include <span>
#include <vector>

#include "poreflow/config.hpp"
#include "poreflow/fields.hpp"
#include "poreflow/geometry.hpp"
#include "poreflow/mixture.hpp"

namespace poreflow {

struct AxialPotential {
  std::vector<double> phi_z;
  std::vector<double> dphi_z;
};

/// phi_z(z) = (phi_in - phi_out) dI_phiz(z) + phi_out, with the exact
/// derivative dphi_z = (phi_in - phi_out) / (R^2 P_phiz).
AxialPotential axial_potential(const BoundaryConditions& bc, const PoreGeometry& geom,
                               const GeometricIntegrals& gi);

/// Radial closure integrals of the Q transport equation, per species:
/// H1 = int nbar y0^a exp(-z phi_r) r dr, H2 the same weighted by u.
struct TransportClosure {
  std::vector<std::vector<double>> H1;  // [species][z]
  std::vector<std::vector<double>> H2;
};

/// `u` may be null (or empty) before the velocity is available; H2 is then 0.
TransportClosure closure_integrals(const Field2D& phi_r, const Field2D& y0, const Field2D& nbar,
                                   std::span<const RadialGrid> grids, const MixtureSpec& spec,
                                   const Field2D* u);

struct AxialFactors {
  std::vector<std::vector<double>> Q;     // [species][z]
  std::vector<std::vector<double>> dQdz;  // [species][z]
  std::vector<std::vector<double>> flux;  // [species][face], k(dQ + zQ phi_z')H1 - Pe Q H2
};

/// Dirichlet boundary values Q_a = y_a^bulk (y0^bulk)^(-a_a) at both ends.
std::vector<double> boundary_factors(std::span<const double> n_bulk, const MixtureSpec& spec);

/// Solves the steady Q transport equation per species with exponentially
/// fitted (Scharfetter-Gummel) fluxes on the axial grid.
AxialFactors solve_axial(const TransportClosure& closure, const AxialPotential& pot,
                         const BoundaryConditions& bc, const MixtureSpec& spec, double Pe,
                         std::span<const double> z);

/// Bernoulli function x/(exp(x)-1), stable near 0.
double bernoulli(double x);

}  // namespace poreflow
