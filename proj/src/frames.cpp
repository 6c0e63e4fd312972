#include "wigner/frames.hpp"

#include <cmath>

#include "wigner/detail/tetrad.hpp"
#include "wigner/errors.hpp"

namespace wigner {

namespace {

void require_unit_signs(const NullConstants& c, const GaugeChoice& g) {
  if (c.eps_r * c.eps_r != 1 || c.eps_theta * c.eps_theta != 1)
    throw InvalidArgument("direction signs must be +-1");
  if (g.eta1 * g.eta1 != 1 || g.eta2 * g.eta2 != 1)
    throw InvalidArgument("gauge orientation signs must be +-1");
}

}  // namespace

FourVector static_velocity(const SpacetimeParams& params, double r) {
  require_exterior(params, r);
  return {1.0 / std::sqrt(params.f(r)), 0.0, 0.0, 0.0};
}

FourVector third_leg(const SpacetimeParams& params,
                     const NullConstants& consts, const Point& p) {
  NullConstants unit = consts;
  unit.energy = 1.0;
  const FourVector k = null_vector_general(params, unit, p);
  const double sqf = std::sqrt(params.f(p.r));
  // The time component cancels identically against the observer leg.
  return {0.0, k.r * sqf, k.theta * sqf, k.phi * sqf};
}

Tetrad adapted_tetrad_general(const SpacetimeParams& params,
                              const NullConstants& consts, const Point& p,
                              const GaugeChoice& gauge) {
  require_exterior(params, p.r);
  require_polar_band(p.theta);
  require_unit_signs(consts, gauge);

  const double M = params.mass;
  const double r = p.r;
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  const double l = consts.l_phi;
  const double kt = consts.kappa + l * l;

  const double P = r * r * r - (r - 2.0 * M) * kt;
  if (P < 0.0) throw ForbiddenRegion("ray does not reach this radius");
  if (P == 0.0 && l == 0.0)
    throw TurningPointInside(
        "general gauge parametrization is singular at the turning point");

  const double w_neg = l * l * c * c / (s * s);
  if (consts.kappa - w_neg < -1e-12 * (consts.kappa + w_neg))
    throw ForbiddenRegion("angular potential excludes this colatitude");

  double B = 0.0;
  switch (gauge.kind) {
    case GaugeKind::chosen:
      if (kt > r * r)
        throw GaugeDomainViolation(
            "chosen gauge undefined below r = sqrt(kappa + l^2)");
      B = std::sqrt(1.0 - kt / (r * r)) / r;
      break;
    case GaugeKind::zero:
      B = 0.0;
      break;
    case GaugeKind::plus_inv_r:
      B = 1.0 / r;
      break;
    case GaugeKind::minus_inv_r:
      B = -1.0 / r;
      break;
    case GaugeKind::custom:
      if (!gauge.custom_b)
        throw InvalidArgument("custom gauge requires a B function");
      B = gauge.custom_b(r);
      break;
    default:
      throw Unreachable("unhandled gauge kind");
  }

  const double Q = P * s * s + l * l * (r - 2.0 * M);
  const double r5B2s2 = r * r * r * r * r * B * B * s * s;
  const double S = Q - r5B2s2;
  if (S < -1e-12 * (std::fabs(Q) + r5B2s2))
    throw GaugeDomainViolation("gauge function exceeds the ray bound");

  const auto legs = detail::legs_general<double>(
      M, consts.kappa, l, consts.eps_r, consts.eps_theta, gauge.eta1,
      gauge.eta2, r, p.theta, B);

  Tetrad out;
  out.e0 = static_velocity(params, r);
  out.e1 = {legs.e1[0], legs.e1[1], legs.e1[2], legs.e1[3]};
  out.e2 = {legs.e2[0], legs.e2[1], legs.e2[2], legs.e2[3]};
  out.e3 = third_leg(params, consts, p);
  return out;
}

Tetrad adapted_tetrad_chosen(const SpacetimeParams& params,
                             const NullConstants& consts, const Point& p) {
  if (consts.l_phi != 0.0)
    throw InvalidArgument("chosen-gauge tetrad requires l_phi == 0");
  require_exterior(params, p.r);
  require_polar_band(p.theta);
  GaugeChoice g = GaugeChoice::chosen();
  const auto tc = detail::tetrad_constphi<double>(params, consts, g, p.r,
                                                  p.theta);
  Tetrad out;
  out.e0 = {tc.e[0][0], tc.e[0][1], tc.e[0][2], tc.e[0][3]};
  out.e1 = {tc.e[1][0], tc.e[1][1], tc.e[1][2], tc.e[1][3]};
  out.e2 = {tc.e[2][0], tc.e[2][1], tc.e[2][2], tc.e[2][3]};
  out.e3 = {tc.e[3][0], tc.e[3][1], tc.e[3][2], tc.e[3][3]};
  return out;
}

PolarizationState project_polarization(const SpacetimeParams& params,
                                       const Point& p, const Tetrad& tetrad,
                                       const FourVector& psi) {
  return {dot(params, p, tetrad.e1, psi), dot(params, p, tetrad.e2, psi)};
}

FourVector gauge_shift(const FourVector& psi, const FourVector& k, double c) {
  return {psi.t + c * k.t, psi.r + c * k.r, psi.theta + c * k.theta,
          psi.phi + c * k.phi};
}

}  // namespace wigner
