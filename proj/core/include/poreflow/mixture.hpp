#pragma once

#include <span>
#include <string>
#include <vector>

namespace poreflow {

enum class Variant {
  classical,  // point ions, a = 0, constant total concentration
  bikerman,   // lattice gas, a = 1, equal molar volumes
  mixture,    // incompressible mixture, a = v/v0
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct SpeciesSpec {
  std::string name;
  double z = 0.0;  // charge number
  double k = 1.0;  // dimensionless diffusivity
  double a = 0.0;  // volume fraction v/v0
  double v = 0.0;  // dimensionless molar volume
};

struct MixtureSpec {
  std::vector<SpeciesSpec> species;
  double v0 = 0.0;  // solvent molar volume (unused by the classical variant)
  Variant variant = Variant::classical;

  int count() const { return static_cast<int>(species.size()); }
  void validate() const;
};

/// Per-node mixture state across one radial slice.
struct SliceComposition {
  std::vector<std::vector<double>> y;  // mole fractions, [species][node]
  std::vector<double> y0;              // solvent mole fraction
  std::vector<double> n_bar;           // total concentration
  std::vector<std::vector<double>> n;  // molar densities, [species][node]
  std::vector<double> q;               // charge density
};

/// Bulk (reservoir) state derived from prescribed molar densities.
struct BulkState {
  std::vector<double> y;
  double y0 = 1.0;
  double n_bar = 1.0;
};

/// Solves 1 - y0 - sum_a Q_a y0^{a_a} exp(-z_a phi_r) = 0 for y0 in (0,1].
/// `guess` warm-starts the Newton iteration; the classical variant returns 1.
double solve_y0(std::span<const double> Q, double phi_r, const MixtureSpec& spec,
                double guess = 0.5, double tol = 1e-14);

/// Same root, found by pure bisection (reference implementation).
double solve_y0_bisect(std::span<const double> Q, double phi_r, const MixtureSpec& spec,
                       double tol = 1e-14);

/// n_bar = 1/(v0 + sum (v_a - v0) y_a); the classical variant returns 1.
double total_concentration(std::span<const double> y, const MixtureSpec& spec);

/// Full slice state from the axial factors and the radial potential profile.
SliceComposition slice_composition(std::span<const double> Q, std::span<const double> phi_r,
                                   const MixtureSpec& spec);

/// Bulk composition from molar densities, closing the solvent fraction with
/// the incompressibility constraint.
BulkState bulk_state(std::span<const double> n, const MixtureSpec& spec);

/// Diagnostic chemical potentials at one node (reference potential set to 0).
std::vector<double> chemical_potential(std::span<const double> n_node, double n_bar,
                                       const MixtureSpec& spec);

}  // namespace poreflow
