#include "poreflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "poreflow/fields.hpp"

namespace poreflow {

void PoreGeometry::validate() const {
  if (z.size() < 2 || z.size() != R.size() || z.size() != dRdz.size() ||
      z.size() != sigma.size())
    throw std::invalid_argument("PoreGeometry: inconsistent sampling");
  if (z.front() != 0.0 || std::abs(z.back() - L) > 1e-12 * std::max(1.0, L))
    throw std::invalid_argument("PoreGeometry: axial grid must span [0, L]");
  for (size_t j = 1; j < z.size(); ++j)
    if (!(z[j] > z[j - 1])) throw std::invalid_argument("PoreGeometry: z must increase strictly");
  for (double r : R)
    if (!(r > 0.0)) throw std::invalid_argument("PoreGeometry: R must stay positive");
}

namespace {

std::vector<double> uniform_z(double L, int n_z) {
  if (n_z < 2) throw std::invalid_argument("geometry: need at least 2 axial nodes");
  if (!(L > 0.0)) throw std::invalid_argument("geometry: L must be positive");
  std::vector<double> z(n_z);
  double h = L / (n_z - 1);
  for (int j = 0; j < n_z; ++j) z[j] = j * h;
  z.back() = L;
  return z;
}

}  // namespace

PoreGeometry make_cylinder(double R, double L, int n_z) {
  if (!(R > 0.0)) throw std::invalid_argument("make_cylinder: R must be positive");
  PoreGeometry g;
  g.L = L;
  g.z = uniform_z(L, n_z);
  g.R.assign(n_z, R);
  g.dRdz.assign(n_z, 0.0);
  g.sigma.assign(n_z, 0.0);
  g.validate();
  return g;
}

PoreGeometry make_trumpet(double R1, double R2, double L, int n_z) {
  if (!(R2 > 0.0) || R1 < R2)
    throw std::invalid_argument("make_trumpet: need R1 >= R2 > 0");
  PoreGeometry g;
  g.L = L;
  g.z = uniform_z(L, n_z);
  g.R.resize(n_z);
  g.dRdz.resize(n_z);
  g.sigma.assign(n_z, 0.0);
  const double c = 4.0 * (R1 - R2) / (L * L);
  for (int j = 0; j < n_z; ++j) {
    double z = g.z[j];
    g.R[j] = c * (z * z - z * L) + R1;
    g.dRdz[j] = c * (2.0 * z - L);
  }
  g.validate();
  return g;
}

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 nodes");
  std::vector<double> h(n - 1), d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    if (!(h[i] > 0.0)) throw std::invalid_argument("MonotoneCubic: x must increase strictly");
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m_[i] = 0.0;
    } else {
      // Fritsch-Carlson weighted harmonic mean keeps the interpolant monotone
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  if (n > 2) {
    // limit endpoint slopes (Fritsch-Carlson boundary treatment)
    auto limit_end = [](double m_end, double d0) {
      if (m_end * d0 <= 0.0) return 0.0;
      if (std::abs(m_end) > 3.0 * std::abs(d0)) return 3.0 * d0;
      return m_end;
    };
    m_[0] = limit_end(((2.0 * h[0] + h[1]) * d[0] - h[0] * d[1]) / (h[0] + h[1]), d[0]);
    m_[n - 1] = limit_end(((2.0 * h[n - 2] + h[n - 3]) * d[n - 2] - h[n - 2] * d[n - 3]) /
                              (h[n - 2] + h[n - 3]),
                          d[n - 2]);
  }
}

int MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double MonotoneCubic::operator()(double x) const {
  int i = segment(x);
  double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  int i = segment(x);
  double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  double dh00 = 6 * t * t - 6 * t, dh10 = 3 * t * t - 4 * t + 1;
  double dh01 = 6 * t - 6 * t * t, dh11 = 3 * t * t - 2 * t;
  return (dh00 * y_[i] + h * dh10 * m_[i] + dh01 * y_[i + 1] + h * dh11 * m_[i + 1]) / h;
}

PoreGeometry make_profile(std::span<const std::pair<double, double>> table, int n_z) {
  if (table.size() < 4) throw std::invalid_argument("make_profile: need at least 4 records");
  std::vector<double> tz(table.size()), tR(table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    tz[i] = table[i].first;
    tR[i] = table[i].second;
    if (!(tR[i] > 0.0)) throw std::invalid_argument("make_profile: R must be positive");
    if (i > 0 && !(tz[i] > tz[i - 1]))
      throw std::invalid_argument("make_profile: z must increase strictly");
  }
  const double z0 = tz.front();
  MonotoneCubic interp(tz, tR);
  PoreGeometry g;
  g.L = tz.back() - z0;
  g.z = uniform_z(g.L, n_z);
  g.R.resize(n_z);
  g.dRdz.resize(n_z);
  g.sigma.assign(n_z, 0.0);
  for (int j = 0; j < n_z; ++j) {
    g.R[j] = interp(g.z[j] + z0);
    g.dRdz[j] = interp.derivative(g.z[j] + z0);
  }
  g.validate();
  return g;
}

std::vector<std::pair<double, double>> parse_profile(const std::string& text) {
  std::vector<std::pair<double, double>> table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double z, R;
    if (!(ls >> z)) continue;  // blank line
    if (!(ls >> R))
      throw std::invalid_argument("profile: missing radius at line " + std::to_string(lineno));
    std::string extra;
    if (ls >> extra)
      throw std::invalid_argument("profile: trailing data at line " + std::to_string(lineno));
    table.emplace_back(z, R);
  }
  return table;
}

PoreGeometry load_profile(const std::string& path, int n_z) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_profile: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return make_profile(parse_profile(ss.str()), n_z);
}

PoreGeometry make_flanked_profile(std::span<const std::pair<double, double>> pore_table,
                                  double R_res, double L, int n_z) {
  if (pore_table.size() < 4)
    throw std::invalid_argument("make_flanked_profile: need at least 4 records");
  const double z_a = pore_table.front().first;
  const double z_b = pore_table.back().first;
  if (!(0.0 < z_a && z_a < z_b && z_b < L))
    throw std::invalid_argument("make_flanked_profile: pore section must lie inside (0, L)");
  std::vector<double> tz, tR;
  for (auto& [z, R] : pore_table) {
    tz.push_back(z);
    tR.push_back(R);
  }
  MonotoneCubic interp(tz, tR);

  PoreGeometry g;
  g.L = L;
  g.z = uniform_z(L, n_z);
  // keep the taper junctions as grid nodes: snap the nearest node to each kink
  for (double kink : {z_a, z_b}) {
    auto it = std::min_element(g.z.begin(), g.z.end(), [kink](double a, double b) {
      return std::abs(a - kink) < std::abs(b - kink);
    });
    if (it != g.z.begin() && it + 1 != g.z.end()) *it = kink;
  }
  g.R.resize(n_z);
  g.dRdz.resize(n_z);
  g.sigma.assign(n_z, 0.0);
  const double sl_a = (tR.front() - R_res) / z_a;          // taper into the pore entry
  const double sl_b = (R_res - tR.back()) / (L - z_b);     // taper out of the pore exit
  for (int j = 0; j < n_z; ++j) {
    double z = g.z[j];
    if (z < z_a) {
      g.R[j] = R_res + sl_a * z;
      g.dRdz[j] = sl_a;
    } else if (z > z_b) {
      g.R[j] = tR.back() + sl_b * (z - z_b);
      g.dRdz[j] = sl_b;
    } else {
      g.R[j] = interp(z);
      g.dRdz[j] = interp.derivative(z);
    }
  }
  g.validate();
  return g;
}

PoreGeometry tanh_surface_charge(double sigma0, double L1, double L2, double eps,
                                 PoreGeometry geom) {
  if (!(eps > 0.0)) throw std::invalid_argument("tanh_surface_charge: eps must be positive");
  if (!(0.0 <= L1 && L1 < L2 && L2 <= geom.L))
    throw std::invalid_argument("tanh_surface_charge: need 0 <= L1 < L2 <= L");
  for (int j = 0; j < geom.size(); ++j)
    geom.sigma[j] =
        0.5 * sigma0 * (std::tanh((geom.z[j] - L1) / eps) - std::tanh((geom.z[j] - L2) / eps));
  return geom;
}

GeometricIntegrals geometric_integrals(const PoreGeometry& geom) {
  geom.validate();
  const int n = geom.size();
  std::vector<double> r2(n), r4(n);
  for (int j = 0; j < n; ++j) {
    double inv = 1.0 / (geom.R[j] * geom.R[j]);
    r2[j] = inv;
    r4[j] = inv * inv;
  }
  GeometricIntegrals gi;
  gi.I_phiz = cumtrapz(geom.z, r2);
  gi.I_p = cumtrapz(geom.z, r4);
  gi.P_phiz = gi.I_phiz.back();
  gi.P_p = gi.I_p.back();
  gi.dI_phiz.resize(n);
  gi.dI_p.resize(n);
  for (int j = 0; j < n; ++j) {
    gi.dI_phiz[j] = gi.I_phiz[j] / gi.P_phiz;
    gi.dI_p[j] = gi.I_p[j] / gi.P_p;
  }
  return gi;
}

}  // namespace poreflow
