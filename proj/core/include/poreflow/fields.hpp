#pragma once

#include <cassert>
#include <span>
#include <vector>

namespace poreflow {

/// Dense field on the logical (r/R, z) rectangle. The radial index varies
/// fastest; one contiguous column per axial slice.
class Field2D {
 public:
  Field2D() = default;
  Field2D(int nr, int nz, double fill = 0.0) : nr_(nr), nz_(nz), v_(static_cast<size_t>(nr) * nz, fill) {}

  int nr() const { return nr_; }
  int nz() const { return nz_; }
  bool empty() const { return v_.empty(); }

  double& operator()(int ir, int iz) { return v_[static_cast<size_t>(iz) * nr_ + ir]; }
  double operator()(int ir, int iz) const { return v_[static_cast<size_t>(iz) * nr_ + ir]; }

  double* col(int iz) { return v_.data() + static_cast<size_t>(iz) * nr_; }
  const double* col(int iz) const { return v_.data() + static_cast<size_t>(iz) * nr_; }
  std::span<double> column(int iz) { return {col(iz), static_cast<size_t>(nr_)}; }
  std::span<const double> column(int iz) const { return {col(iz), static_cast<size_t>(nr_)}; }

  std::vector<double>& data() { return v_; }
  const std::vector<double>& data() const { return v_; }

 private:
  int nr_ = 0, nz_ = 0;
  std::vector<double> v_;
};

/// Uniform radial grid on [0, R] with finite-volume quadrature weights.
/// The weights are the cell volumes of the FV discretization of the radial
/// Laplacian, so they integrate f(r) r dr and reproduce ∫ r dr = R²/2 exactly.
struct RadialGrid {
  double R = 0.0;
  double h = 0.0;
  std::vector<double> r;
  std::vector<double> w;

  static RadialGrid uniform(double R, int n_r);

  int size() const { return static_cast<int>(r.size()); }

  double integrate(std::span<const double> f) const {
    assert(f.size() == w.size());
    double s = 0.0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * f[i];
    return s;
  }
};

/// Trapezoid rule on a (possibly non-uniform) grid.
double trapz(std::span<const double> x, std::span<const double> f);

/// Cumulative trapezoid: out[0] = 0, out[j] = ∫_{x0}^{xj} f dx.
std::vector<double> cumtrapz(std::span<const double> x, std::span<const double> f);

/// Second-order first derivative on a non-uniform grid, one-sided at the ends.
std::vector<double> gradient(std::span<const double> x, std::span<const double> f);

/// Column-wise d/dz of a logical-rectangle field (central interior,
/// one-sided ends; grid spacing may be non-uniform).
Field2D ddz(const Field2D& f, std::span<const double> z);

}  // namespace poreflow
