#include <cmath>
#include <vector>

#include "doctest.h"
#include "poreflow/axial.hpp"
#include "poreflow/geometry.hpp"

using namespace poreflow;

namespace {

MixtureSpec classical_salt() {
  MixtureSpec m;
  m.variant = Variant::classical;
  m.species = {{"cation", 1.0, 1.33, 0.0, 0.0}, {"anion", -1.0, 0.79, 0.0, 0.0}};
  return m;
}

}  // namespace

TEST_CASE("bernoulli function limits") {
  CHECK(bernoulli(0.0) == doctest::Approx(1.0));
  CHECK(bernoulli(1e-12) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bernoulli(1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
  // B(-x) = B(x) + x
  for (double x : {0.3, 2.0, 15.0}) CHECK(bernoulli(-x) == doctest::Approx(bernoulli(x) + x));
  // extreme drift stays finite and positive
  CHECK(bernoulli(800.0) >= 0.0);
  CHECK(std::isfinite(bernoulli(800.0)));
  CHECK(std::isfinite(bernoulli(-800.0)));
}

TEST_CASE("axial potential interpolates the applied bias") {
  auto geom = make_cylinder(5.0, 25.0, 301);
  auto gi = geometric_integrals(geom);
  BoundaryConditions bc;
  bc.n_out = {0.6, 0.6};
  bc.n_in = {0.6, 0.6};
  bc.phi_out = 1.0;
  bc.phi_in = -7.0;
  auto pot = axial_potential(bc, geom, gi);
  CHECK(pot.phi_z.front() == doctest::Approx(1.0));
  CHECK(pot.phi_z.back() == doctest::Approx(-7.0));
  // straight pore: linear profile with constant slope dphi / L
  for (int j = 0; j < geom.size(); ++j) {
    CHECK(pot.phi_z[j] == doctest::Approx(1.0 - 8.0 * geom.z[j] / 25.0).epsilon(1e-10));
    CHECK(pot.dphi_z[j] == doctest::Approx(-8.0 / 25.0).epsilon(1e-10));
  }
}

TEST_CASE("boundary factors invert the Boltzmann closure") {
  auto spec = classical_salt();
  auto q = boundary_factors(std::vector<double>{0.6, 0.4}, spec);
  CHECK(q[0] == doctest::Approx(0.6));
  CHECK(q[1] == doctest::Approx(0.4));

  MixtureSpec mix = spec;
  mix.variant = Variant::mixture;
  mix.v0 = 0.018;
  for (auto& sp : mix.species) {
    sp.a = 4.15;
    sp.v = 4.15 * 0.018;
  }
  auto qm = boundary_factors(std::vector<double>{0.5, 0.5}, mix);
  // Q_a = y_a (y0)^(-a); reconstructing y_a must give the bulk value back
  double nv = 2.0 * 0.5 * 4.15 * 0.018;
  double n0 = (1.0 - nv) / 0.018;
  double nbar = n0 + 1.0;
  double y0 = n0 / nbar;
  CHECK(qm[0] == doctest::Approx((0.5 / nbar) * std::pow(y0, -4.15)).epsilon(1e-12));
}

TEST_CASE("constant-coefficient transport matches the exponential solution") {
  // straight pore, uniform closure integral, linear potential: the
  // Scharfetter-Gummel discretization is nodally exact for this problem
  const double L = 25.0, H1c = 11.3, dphi = -3.0;
  const int nz = 120;
  auto geom = make_cylinder(5.0, L, nz);
  auto gi = geometric_integrals(geom);
  BoundaryConditions bc;
  bc.n_out = {0.6, 0.3};
  bc.n_in = {0.2, 0.9};
  bc.phi_out = 0.0;
  bc.phi_in = dphi;
  auto spec = classical_salt();
  auto pot = axial_potential(bc, geom, gi);

  TransportClosure cl;
  cl.H1.assign(2, std::vector<double>(nz, H1c));
  cl.H2.assign(2, std::vector<double>(nz, 0.0));

  auto f = solve_axial(cl, pot, bc, spec, 2.78, geom.z);
  REQUIRE(f.Q.size() == 2);

  for (int s = 0; s < 2; ++s) {
    const auto& sp = spec.species[s];
    const double beta = sp.z * dphi / L;  // drift rate of Q' + z phi' Q = const
    const double Q0 = bc.n_out[s], QL = bc.n_in[s];
    const double C = (Q0 - QL) / (1.0 - std::exp(-beta * L));
    const double D = Q0 - C;
    const double J = sp.k * H1c * beta * D;
    for (int j = 0; j < nz; ++j) {
      double exact = C * std::exp(-beta * geom.z[j]) + D;
      CHECK(f.Q[s][j] == doctest::Approx(exact).epsilon(1e-9));
    }
    for (double flux : f.flux[s]) CHECK(flux == doctest::Approx(J).epsilon(1e-9));
  }
}

TEST_CASE("flux is constant for variable coefficients") {
  const int nz = 90;
  auto geom = make_cylinder(5.0, 25.0, nz);
  auto gi = geometric_integrals(geom);
  BoundaryConditions bc;
  bc.n_out = {0.6, 0.6};
  bc.n_in = {0.6, 0.6};
  bc.phi_in = 4.0;
  auto spec = classical_salt();
  auto pot = axial_potential(bc, geom, gi);

  TransportClosure cl;
  cl.H1.assign(2, std::vector<double>(nz));
  cl.H2.assign(2, std::vector<double>(nz));
  for (int j = 0; j < nz; ++j) {
    double z = geom.z[j];
    for (int s = 0; s < 2; ++s) {
      cl.H1[s][j] = 10.0 + 3.0 * std::sin(0.4 * z);
      cl.H2[s][j] = 0.5 * std::cos(0.2 * z);
    }
  }
  auto f = solve_axial(cl, pot, bc, spec, 2.78, geom.z);
  for (int s = 0; s < 2; ++s) {
    double ref = f.flux[s].front();
    for (double flux : f.flux[s])
      CHECK(flux == doctest::Approx(ref).epsilon(1e-9));
    CHECK(f.Q[s].front() == doctest::Approx(0.6));
    CHECK(f.Q[s].back() == doctest::Approx(0.6));
  }
}
