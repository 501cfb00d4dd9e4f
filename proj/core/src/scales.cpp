#include "poreflow/scales.hpp"

#include <cmath>
#include <stdexcept>

namespace poreflow {

void ReferenceScales::validate() const {
  auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!pos(L0) || !pos(R0) || !pos(tau) || !pos(cR) || !pos(sigmaR) || !pos(T) || !pos(nu))
    throw std::invalid_argument("ReferenceScales: all scales must be positive and finite");
  if (!(epsR > 1.0)) throw std::invalid_argument("ReferenceScales: epsR must exceed 1");
}

void DimensionlessGroups::validate() const {
  if (!(Lambda > 0.0)) throw std::invalid_argument("DimensionlessGroups: Lambda must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("DimensionlessGroups: delta must lie in (0,1)");
  if (Pe < 0.0) throw std::invalid_argument("DimensionlessGroups: Pe must be non-negative");
}

DimensionlessGroups derive_groups(const ReferenceScales& s) {
  s.validate();
  DimensionlessGroups g;
  const double eps = phys::eps0 * s.epsR;
  g.Lambda = std::sqrt(eps * s.phi_ref() / (phys::F * s.c_si() * s.R0 * s.R0));
  g.gamma = s.R0 * s.sigmaR / (eps * s.phi_ref());
  g.Pe = s.u_ref() * s.L0 / s.D_ref();
  g.delta = s.R0 / s.L0;
  g.validate();
  return g;
}

}  // namespace poreflow
