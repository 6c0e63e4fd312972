#pragma once

#include <functional>

#include "wigner/geodesics.hpp"

namespace wigner {

enum class GaugeKind { chosen, zero, plus_inv_r, minus_inv_r, custom };

// Residual frame freedom of the adapted tetrad. B(r) is the polar component
// e_2^theta left free by the adaptation; eta1/eta2 are orientation signs of
// the transverse legs. The named kinds cover B = (1/r) sqrt(1 - kappa/r^2)
// (chosen), B = 0, and B = +-1/r. A custom kind supplies B and dB/dr.
struct GaugeChoice {
  GaugeKind kind = GaugeKind::chosen;
  int eta1 = +1;
  int eta2 = +1;
  std::function<double(double)> custom_b;      // r -> B
  std::function<double(double)> custom_db_dr;  // r -> dB/dr

  static GaugeChoice chosen() { return {}; }
  static GaugeChoice zero() { return {GaugeKind::zero, +1, +1, {}, {}}; }
  static GaugeChoice plus_inv_r() {
    return {GaugeKind::plus_inv_r, +1, +1, {}, {}};
  }
  static GaugeChoice minus_inv_r() {
    return {GaugeKind::minus_inv_r, +1, +1, {}, {}};
  }
  static GaugeChoice custom(std::function<double(double)> b,
                            std::function<double(double)> db_dr) {
    return {GaugeKind::custom, +1, +1, std::move(b), std::move(db_dr)};
  }
};

// Orthonormal tetrad; e0 is the static observer, e3 the spatial propagation
// direction, e1/e2 span the polarization plane.
struct Tetrad {
  FourVector e0, e1, e2, e3;
};

// Transverse polarization components along e1 and e2.
struct PolarizationState {
  double psi1 = 0.0;
  double psi2 = 0.0;
};

// Four-velocity (1/sqrt(f)) d_t of the static observer at radius r.
FourVector static_velocity(const SpacetimeParams& params, double r);

// Unit spacelike propagation direction e3 = k / (E_p / sqrt(f)) - e0.
FourVector third_leg(const SpacetimeParams& params, const NullConstants& consts,
                     const Point& p);

// Full adapted tetrad for a general ray (l_phi may be nonzero) in the given
// gauge. Throws GaugeDomainViolation when B is incompatible with the ray.
Tetrad adapted_tetrad_general(const SpacetimeParams& params,
                              const NullConstants& consts, const Point& p,
                              const GaugeChoice& gauge);

// Adapted tetrad of a constant-phi ray in the chosen gauge
// B = (1/r) sqrt(1 - kappa/r^2), eta1 = eta2 = +1.
Tetrad adapted_tetrad_chosen(const SpacetimeParams& params,
                             const NullConstants& consts, const Point& p);

// Transverse components (psi^1, psi^2) of a polarization vector by
// metric contraction with the tetrad legs.
PolarizationState project_polarization(const SpacetimeParams& params,
                                       const Point& p, const Tetrad& tetrad,
                                       const FourVector& psi);

// Gauge translate psi -> psi + C k along the ray direction.
FourVector gauge_shift(const FourVector& psi, const FourVector& k, double c);

}  // namespace wigner
