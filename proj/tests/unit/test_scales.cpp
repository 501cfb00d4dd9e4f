#include <stdexcept>

#include "doctest.h"
#include "poreflow/scales.hpp"

using namespace poreflow;

TEST_CASE("reference quantities follow from the scales") {
  ReferenceScales s;  // defaults: L0 = 1e-8 m, R0 = 1e-9 m, tau = 1e-9 s
  CHECK(s.D_ref() == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK(s.phi_ref() == doctest::Approx(0.0257).epsilon(2e-3));  // thermal voltage
  CHECK(s.c_si() == doctest::Approx(1000.0));
  CHECK(s.Qeo_ref() == doctest::Approx(s.u_ref() * s.R0 * s.R0));
}

TEST_CASE("derived groups match the tabulated nanopore values") {
  ReferenceScales s;
  auto g = derive_groups(s);
  // Pe = u_ref L0 / D_ref
  CHECK(g.Pe == doctest::Approx(s.u_ref() * s.L0 / s.D_ref()).epsilon(1e-12));
  CHECK(g.Pe == doctest::Approx(2.78).epsilon(0.02));
  CHECK(g.delta == doctest::Approx(0.1).epsilon(1e-12));
  // Debye-type length over R0 and the wall-charge group
  CHECK(g.Lambda == doctest::Approx(0.4302).epsilon(2e-3));
  CHECK(g.gamma == doctest::Approx(s.R0 * s.sigmaR /
                                   (phys::eps0 * s.epsR * s.phi_ref())).epsilon(1e-12));
  CHECK(g.gamma == doctest::Approx(9.23).epsilon(0.04));  // tabulated rounding sits 3% off
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("group validation") {
  DimensionlessGroups g;
  CHECK_NOTHROW(g.validate());
  g.Pe = 0.0;  // advection switched off is a supported mode
  CHECK_NOTHROW(g.validate());
  g.Lambda = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);

  ReferenceScales bad;
  bad.R0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
