#include "poreflow/fields.hpp"

#include <stdexcept>

namespace poreflow {

RadialGrid RadialGrid::uniform(double R, int n_r) {
  if (R <= 0.0) throw std::invalid_argument("RadialGrid: R must be positive");
  if (n_r < 3) throw std::invalid_argument("RadialGrid: need at least 3 nodes");
  RadialGrid g;
  g.R = R;
  g.h = R / (n_r - 1);
  g.r.resize(n_r);
  g.w.resize(n_r);
  for (int i = 0; i < n_r; ++i) g.r[i] = i * g.h;
  g.r.back() = R;
  // FV cell volumes: [0, h/2], [r-h/2, r+h/2], [R-h/2, R]
  g.w[0] = g.h * g.h / 8.0;
  for (int i = 1; i < n_r - 1; ++i) g.w[i] = g.r[i] * g.h;
  g.w[n_r - 1] = R * g.h / 2.0 - g.h * g.h / 8.0;
  return g;
}

double trapz(std::span<const double> x, std::span<const double> f) {
  assert(x.size() == f.size());
  double s = 0.0;
  for (size_t j = 0; j + 1 < x.size(); ++j) s += 0.5 * (x[j + 1] - x[j]) * (f[j] + f[j + 1]);
  return s;
}

std::vector<double> cumtrapz(std::span<const double> x, std::span<const double> f) {
  assert(x.size() == f.size());
  std::vector<double> out(x.size(), 0.0);
  for (size_t j = 1; j < x.size(); ++j)
    out[j] = out[j - 1] + 0.5 * (x[j] - x[j - 1]) * (f[j] + f[j - 1]);
  return out;
}

std::vector<double> gradient(std::span<const double> x, std::span<const double> f) {
  const size_t n = x.size();
  assert(f.size() == n);
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (f[1] - f[0]) / (x[1] - x[0]);
  d[n - 1] = (f[n - 1] - f[n - 2]) / (x[n - 1] - x[n - 2]);
  if (n == 2) return d;
  // three-point one-sided at the ends, non-uniform central in the interior
  {
    const double h1 = x[1] - x[0], h2 = x[2] - x[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
           h1 / (h2 * (h1 + h2)) * f[2];
    const double g1 = x[n - 1] - x[n - 2], g2 = x[n - 2] - x[n - 3];
    d[n - 1] = (2.0 * g1 + g2) / (g1 * (g1 + g2)) * f[n - 1] - (g1 + g2) / (g1 * g2) * f[n - 2] +
               g1 / (g2 * (g1 + g2)) * f[n - 3];
  }
  for (size_t j = 1; j + 1 < n; ++j) {
    const double hm = x[j] - x[j - 1], hp = x[j + 1] - x[j];
    d[j] = (f[j + 1] * hm * hm + f[j] * (hp * hp - hm * hm) - f[j - 1] * hp * hp) /
           (hm * hp * (hm + hp));
  }
  return d;
}

Field2D ddz(const Field2D& f, std::span<const double> z) {
  const int nr = f.nr(), nz = f.nz();
  assert(static_cast<int>(z.size()) == nz);
  Field2D out(nr, nz);
  std::vector<double> row(nz), drow;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nz; ++j) row[j] = f(i, j);
    drow = gradient(z, row);
    for (int j = 0; j < nz; ++j) out(i, j) = drow[j];
  }
  return out;
}

}  // namespace poreflow
