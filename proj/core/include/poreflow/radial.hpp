#pragma once

#include <span>
#include <vector>

#include "poreflow/config.hpp"
#include "poreflow/fields.hpp"
#include "poreflow/mixture.hpp"

namespace poreflow {

/// Converged radial potential on one slice.
struct RadialPotential {
  std::vector<double> phi_r;
  std::vector<double> zeta;  // phi_r - phi_r(R)
  SliceComposition comp;     // mixture state at the converged potential
  double residual_norm = 0.0;
  int iterations = 0;
};

/// Solves -(1/r) d_r(r d_r phi) = (nbar/Lambda^2) sum z_a Q_a y0^a exp(-z_a phi)
/// with d_r phi(0) = 0 and the wall-charge Neumann condition d_r phi(R) =
/// gamma sigma, using a damped Newton iteration on the finite-volume stencil.
RadialPotential solve_radial(std::span<const double> Q, double sigma, double Lambda, double gamma,
                             const RadialGrid& grid, const MixtureSpec& spec,
                             const SolverConfig& cfg,
                             std::span<const double> guess = {});

/// Conservation identity of the converged slice: int q r dr + Lambda^2 gamma
/// sigma R, which the discrete solution satisfies up to the Newton tolerance.
double electroneutrality_defect(std::span<const double> q, const RadialGrid& grid, double Lambda,
                                double gamma, double sigma);

/// Thomas algorithm for a tridiagonal system (diagonals d, off-diagonals
/// lower l and upper u); overwrites nothing, returns the solution.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace poreflow
