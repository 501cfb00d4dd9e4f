#pragma once

namespace poreflow {

/// Physical constants (SI).
namespace phys {
inline constexpr double e0 = 1.602176634e-19;   // elementary charge [C]
inline constexpr double kB = 1.380649e-23;      // Boltzmann constant [J/K]
inline constexpr double NA = 6.02214076e23;     // Avogadro constant [1/mol]
inline constexpr double F = e0 * NA;            // Faraday constant [C/mol]
inline constexpr double RG = kB * NA;           // gas constant [J/(mol K)]
inline constexpr double eps0 = 8.8541878128e-12;  // vacuum permittivity [F/m]
}  // namespace phys

/// Reference quantities defining the nondimensionalization. All SI.
struct ReferenceScales {
  double L0 = 1e-8;      // pore length scale [m]
  double R0 = 1e-9;      // pore radius scale [m]
  double tau = 1e-9;     // time scale [s]
  double cR = 1.0;       // concentration [mol/L]
  double sigmaR = 0.16;  // surface charge [C/m^2]
  double T = 298.15;     // temperature [K]
  double nu = 0.8904e-3; // viscosity [Pa s]
  double epsR = 78.49;   // relative permittivity

  void validate() const;

  double c_si() const { return cR * 1000.0; }              // [mol/m^3]
  double D_ref() const { return R0 * R0 / tau; }           // [m^2/s]
  double phi_ref() const { return phys::RG * T / phys::F; }  // thermal voltage [V]
  double p_ref() const { return c_si() * phys::NA * phys::kB * T; }  // [Pa]
  double u_ref() const { return p_ref() * R0 * R0 / (nu * L0); }     // [m/s]
  double I_ref() const { return phys::F * R0 * R0 * D_ref() * c_si() / L0; }  // [A]
  double Qeo_ref() const { return u_ref() * R0 * R0; }     // [m^3/s]
};

struct DimensionlessGroups {
  double Lambda = 0.4;  // Debye length / R0
  double gamma = 9.23;  // surface charge group
  double Pe = 2.78;     // Peclet number
  double delta = 0.1;   // R0 / L0

  void validate() const;
};

/// Computes the dimensionless groups from the reference scales.
DimensionlessGroups derive_groups(const ReferenceScales& s);

}  // namespace poreflow
