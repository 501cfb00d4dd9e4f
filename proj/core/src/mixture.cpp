#include "poreflow/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poreflow {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::classical: return "classical";
    case Variant::bikerman: return "bikerman";
    case Variant::mixture: return "mixture";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "classical") return Variant::classical;
  if (s == "bikerman") return Variant::bikerman;
  if (s == "mixture") return Variant::mixture;
  throw std::invalid_argument("unknown variant: " + s);
}

void MixtureSpec::validate() const {
  if (species.empty()) throw std::invalid_argument("MixtureSpec: need at least one species");
  for (const auto& sp : species) {
    if (!(sp.k > 0.0)) throw std::invalid_argument("MixtureSpec: diffusivities must be positive");
    if (sp.a < 0.0) throw std::invalid_argument("MixtureSpec: volume fractions must be >= 0");
  }
  switch (variant) {
    case Variant::classical:
      for (const auto& sp : species)
        if (sp.a != 0.0)
          throw std::invalid_argument("MixtureSpec: classical variant requires a = 0");
      break;
    case Variant::bikerman:
      for (const auto& sp : species)
        if (sp.a != 1.0)
          throw std::invalid_argument("MixtureSpec: bikerman variant requires a = 1");
      if (!(v0 > 0.0)) throw std::invalid_argument("MixtureSpec: bikerman variant requires v0 > 0");
      break;
    case Variant::mixture:
      if (!(v0 > 0.0)) throw std::invalid_argument("MixtureSpec: mixture variant requires v0 > 0");
      for (const auto& sp : species)
        if (std::abs(sp.a - sp.v / v0) > 1e-12 * std::max(1.0, sp.a))
          throw std::invalid_argument("MixtureSpec: mixture variant requires a = v/v0");
      break;
  }
}

namespace {

constexpr double kY0Floor = 1e-14;

// y^a, by repeated squaring when the exponent was detected as a small
// integer (ai >= 0), otherwise through std::pow.
double pow_exponent(double y, double a, int ai) {
  if (ai < 0) return std::pow(y, a);
  double r = 1.0, b = y;
  for (int n = ai; n > 0; n >>= 1) {
    if (n & 1) r *= b;
    b *= b;
  }
  return r;
}

// g(y0) = 1 - y0 - sum QE_a y0^{a_a} with the Boltzmann-weighted factors
// QE_a = Q_a exp(-z_a phi_r) precomputed; strictly decreasing on (0,1).
struct Y0Root {
  std::span<const double> QE;
  std::span<const double> a;
  double QE_sum = 0.0;
  bool uniform = false;  // all exponents equal: one pow serves g and g'
  int a0_int = -1;       // a[0] when it is a small integer, -1 otherwise

  void init() {
    uniform = true;
    QE_sum = 0.0;
    for (size_t i = 0; i < QE.size(); ++i) {
      QE_sum += QE[i];
      if (a[i] != a[0]) uniform = false;
    }
    a0_int = -1;
    if (!a.empty() && a[0] >= 0.0 && a[0] <= 64.0 && a[0] == std::floor(a[0]))
      a0_int = static_cast<int>(a[0]);
  }

  void eval(double y, double& g, double& dg) const {
    g = 1.0 - y;
    dg = -1.0;
    if (uniform) {
      const double p = QE_sum * pow_exponent(y, a[0], a0_int);
      g -= p;
      dg -= a[0] * p / y;
      return;
    }
    for (size_t i = 0; i < QE.size(); ++i) {
      const double p = QE[i] * std::pow(y, a[i]);
      g -= p;
      dg -= a[i] * p / y;
    }
  }
  double value(double y) const {
    double g, dg;
    eval(y, g, dg);
    return g;
  }
};

// Safeguarded Newton on the y0 root; shared by solve_y0 and slice_composition.
double y0_newton(const Y0Root& f, double guess, double tol, const char* who) {
  double lo = kY0Floor, hi = 1.0;
  if (f.value(lo) <= 0.0)
    throw std::runtime_error(std::string(who) + ": no root in (0,1], composition unphysical");
  if (f.QE_sum <= 0.0) return 1.0;  // g(1) = -sum QE: all factors vanish, pure solvent

  double y = std::clamp(guess, lo, hi);
  for (int it = 0; it < 100; ++it) {
    double gy, dgy;
    f.eval(y, gy, dgy);
    if (std::abs(gy) < 1e-300) return y;
    (gy > 0.0 ? lo : hi) = y;
    double ynew = y - gy / dgy;
    if (!(ynew > lo && ynew < hi)) ynew = 0.5 * (lo + hi);  // bisection safeguard
    if (std::abs(ynew - y) < tol * std::max(1.0, std::abs(y))) return ynew;
    y = ynew;
  }
  return y;
}

void weighted_factors(std::span<const double> Q, double phi_r, const MixtureSpec& spec,
                      std::vector<double>& QE) {
  QE.resize(Q.size());
  double E = 0.0;  // exp(-phi_r), shared between the z = +1 and z = -1 species
  for (size_t i = 0; i < Q.size(); ++i) {
    if (Q[i] < 0.0) throw std::invalid_argument("solve_y0: Q must be non-negative");
    const double z = spec.species[i].z;
    if (z == 1.0 || z == -1.0) {
      if (E == 0.0) E = std::exp(-phi_r);
      QE[i] = z > 0.0 ? Q[i] * E : Q[i] / E;
    } else {
      QE[i] = Q[i] * std::exp(-z * phi_r);
    }
  }
}

std::vector<double> exponent_row(const MixtureSpec& spec) {
  std::vector<double> a(spec.species.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] = spec.species[i].a;
  return a;
}

}  // namespace

double solve_y0(std::span<const double> Q, double phi_r, const MixtureSpec& spec, double guess,
                double tol) {
  if (spec.variant == Variant::classical) return 1.0;
  std::vector<double> QE;
  weighted_factors(Q, phi_r, spec, QE);
  const auto a = exponent_row(spec);
  Y0Root f{QE, a};
  f.init();
  return y0_newton(f, guess, tol, "solve_y0");
}

double solve_y0_bisect(std::span<const double> Q, double phi_r, const MixtureSpec& spec,
                       double tol) {
  if (spec.variant == Variant::classical) return 1.0;
  std::vector<double> QE;
  weighted_factors(Q, phi_r, spec, QE);
  const auto a = exponent_row(spec);
  Y0Root f{QE, a};
  f.init();

  double lo = kY0Floor, hi = 1.0;
  if (f.value(lo) <= 0.0)
    throw std::runtime_error("solve_y0_bisect: no root in (0,1], composition unphysical");
  if (f.QE_sum <= 0.0) return 1.0;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    (f.value(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double total_concentration(std::span<const double> y, const MixtureSpec& spec) {
  if (spec.variant == Variant::classical) return 1.0;
  double denom = spec.v0;
  for (size_t i = 0; i < y.size(); ++i) denom += (spec.species[i].v - spec.v0) * y[i];
  if (!(denom > 0.0))
    throw std::runtime_error("total_concentration: non-positive volume denominator");
  return 1.0 / denom;
}

SliceComposition slice_composition(std::span<const double> Q, std::span<const double> phi_r,
                                   const MixtureSpec& spec) {
  const int ns = spec.count();
  const int nr = static_cast<int>(phi_r.size());
  SliceComposition c;
  c.y.assign(ns, std::vector<double>(nr));
  c.n.assign(ns, std::vector<double>(nr));
  c.y0.assign(nr, 1.0);
  c.n_bar.assign(nr, 1.0);
  c.q.assign(nr, 0.0);

  const auto a = exponent_row(spec);
  std::vector<double> QE(ns), yrow(ns);
  const bool classical = spec.variant == Variant::classical;
  double warm = 0.5;
  for (int ir = 0; ir < nr; ++ir) {
    weighted_factors(Q, phi_r[ir], spec, QE);
    Y0Root f{QE, a};
    f.init();
    double y0 = 1.0;
    if (!classical) {
      y0 = y0_newton(f, warm, 1e-14, "slice_composition");
      warm = y0;
    }
    c.y0[ir] = y0;
    if (f.uniform) {
      const double p = pow_exponent(y0, a[0], f.a0_int);
      for (int s = 0; s < ns; ++s) yrow[s] = QE[s] * p;
    } else {
      for (int s = 0; s < ns; ++s) yrow[s] = QE[s] * std::pow(y0, a[s]);
    }
    const double nb = total_concentration(yrow, spec);
    for (int s = 0; s < ns; ++s) {
      c.y[s][ir] = yrow[s];
      c.n[s][ir] = nb * yrow[s];
      c.q[ir] += spec.species[s].z * c.n[s][ir];
    }
    c.n_bar[ir] = nb;
  }
  return c;
}

BulkState bulk_state(std::span<const double> n, const MixtureSpec& spec) {
  BulkState b;
  b.y.resize(n.size());
  if (spec.variant == Variant::classical) {
    b.n_bar = 1.0;
    b.y0 = 1.0;
    for (size_t i = 0; i < n.size(); ++i) b.y[i] = n[i];
    return b;
  }
  double nv = 0.0;
  for (size_t i = 0; i < n.size(); ++i) nv += spec.species[i].v * n[i];
  double n0 = (1.0 - nv) / spec.v0;
  if (!(n0 > 0.0)) throw std::runtime_error("bulk_state: ion volume exceeds unit cell");
  double nbar = n0;
  for (size_t i = 0; i < n.size(); ++i) nbar += n[i];
  b.n_bar = nbar;
  b.y0 = n0 / nbar;
  for (size_t i = 0; i < n.size(); ++i) b.y[i] = n[i] / nbar;
  return b;
}

std::vector<double> chemical_potential(std::span<const double> n_node, double n_bar,
                                       const MixtureSpec& spec) {
  std::vector<double> mu(n_node.size());
  double packing = 0.0;
  for (double v : n_node) packing += v;  // ion contribution to sum n_a / n_bar
  for (size_t i = 0; i < n_node.size(); ++i) {
    if (!(n_node[i] > 0.0))
      throw std::runtime_error("chemical_potential: non-positive concentration");
    switch (spec.variant) {
      case Variant::classical:
        mu[i] = std::log(n_node[i]);
        break;
      case Variant::bikerman:
      case Variant::mixture: {
        double y0 = 1.0 - packing / n_bar;
        if (!(y0 > 0.0)) throw std::runtime_error("chemical_potential: packing limit reached");
        mu[i] = std::log(n_node[i] / n_bar) - spec.species[i].a * std::log(y0);
        break;
      }
    }
  }
  return mu;
}

}  // namespace poreflow
