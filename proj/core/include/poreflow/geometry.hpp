#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace poreflow {

/// Axisymmetric pore shape R(z) with wall charge sigma(z), sampled on the
/// axial grid used by all downstream solvers.
struct PoreGeometry {
  double L = 0.0;
  std::vector<double> z;
  std::vector<double> R;
  std::vector<double> dRdz;
  std::vector<double> sigma;

  int size() const { return static_cast<int>(z.size()); }
  void validate() const;
};

/// Cumulative geometric quadratures entering phi_z and p_z.
struct GeometricIntegrals {
  std::vector<double> I_phiz;   // int_0^z R^-2
  std::vector<double> I_p;      // int_0^z R^-4
  std::vector<double> dI_phiz;  // normalized increment, 0 at z=0, 1 at z=L
  std::vector<double> dI_p;

  double P_phiz = 0.0;  // I_phiz(L) - I_phiz(0)
  double P_p = 0.0;     // I_p(L) - I_p(0)
};

PoreGeometry make_cylinder(double R, double L, int n_z);

/// R(z) = 4 (R1-R2)/L^2 (z^2 - z L) + R1.
PoreGeometry make_trumpet(double R1, double R2, double L, int n_z);

/// Monotone cubic interpolation of a tabulated (z, R) profile onto n_z nodes.
/// The table endpoints define the domain; kink nodes can be pinned afterwards.
PoreGeometry make_profile(std::span<const std::pair<double, double>> table, int n_z);

/// Reads a two-column whitespace-separated profile file ('#' comments).
PoreGeometry load_profile(const std::string& path, int n_z);
std::vector<std::pair<double, double>> parse_profile(const std::string& text);

/// Tabulated pore section flanked by linear reservoir tapers from radius
/// R_res at both domain ends; the junction abscissae stay grid nodes.
PoreGeometry make_flanked_profile(std::span<const std::pair<double, double>> pore_table,
                                  double R_res, double L, int n_z);

/// sigma(z) = sigma0/2 (tanh((z-L1)/eps) - tanh((z-L2)/eps)).
PoreGeometry tanh_surface_charge(double sigma0, double L1, double L2, double eps,
                                 PoreGeometry geom);

GeometricIntegrals geometric_integrals(const PoreGeometry& geom);

/// Monotone (Fritsch-Carlson) piecewise-cubic interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> x, std::span<const double> y);
  double operator()(double x) const;
  double derivative(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // nodes, values, node slopes
  int segment(double x) const;
};

}  // namespace poreflow
