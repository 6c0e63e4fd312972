#include "wigner/transport.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wigner/detail/tetrad.hpp"
#include "wigner/errors.hpp"
#include "wigner/geometry.hpp"
#include "wigner/numerics.hpp"

namespace wigner {

namespace {

using num::Dual;

struct Contraction {
  double value = 0.0;
  double scale = 0.0;
};

// u^mu (e_a . grad_mu e_b) in frame components, with a tally of summand
// magnitudes. The tally bounds the rounding noise left over when the sum
// cancels analytically, which is the situation in the reference gauges.
Contraction connection_contraction(const SpacetimeParams& params,
                                   const NullConstants& consts, const Point& p,
                                   const GaugeChoice& gauge, int leg_a,
                                   int leg_b) {
  if (leg_a < 0 || leg_a > 3 || leg_b < 0 || leg_b > 3)
    throw InvalidArgument("tetrad leg index out of range");
  require_exterior(params, p.r);
  require_polar_band(p.theta);

  const auto dr_pass = detail::tetrad_constphi<Dual>(
      params, consts, gauge, Dual{p.r, 1.0}, Dual{p.theta, 0.0});
  const auto dth_pass = detail::tetrad_constphi<Dual>(
      params, consts, gauge, Dual{p.r, 0.0}, Dual{p.theta, 1.0});

  // Ray direction scaled to unit observer frequency: u = e0 + e3.
  double u[4], ea[4], eb[4], dr_eb[4], dth_eb[4];
  for (int i = 0; i < 4; ++i) {
    u[i] = dr_pass.e[0][i].v + dr_pass.e[3][i].v;
    ea[i] = dr_pass.e[leg_a][i].v;
    eb[i] = dr_pass.e[leg_b][i].v;
    dr_eb[i] = dr_pass.e[leg_b][i].d;
    dth_eb[i] = dth_pass.e[leg_b][i].d;
  }

  const MetricDiag g = metric_at(params, p);
  const double gdiag[4] = {g.tt, g.rr, g.thth, g.phph};
  // Coframe of leg a: raise the frame label with the Minkowski metric of the
  // tetrad, then lower the coordinate index with g.
  const double eta_a = (leg_a == 0) ? -1.0 : 1.0;
  double low_a[4];
  for (int i = 0; i < 4; ++i) low_a[i] = eta_a * gdiag[i] * ea[i];

  const ChristoffelTable gam = christoffel_at(params, p);

  Contraction out;
  const auto add = [&out](double term) {
    out.value += term;
    out.scale += std::fabs(term);
  };
  for (int rho = 0; rho < 4; ++rho) {
    if (low_a[rho] == 0.0) continue;
    if (dr_eb[rho] != 0.0) add(u[1] * low_a[rho] * dr_eb[rho]);
    if (dth_eb[rho] != 0.0) add(u[2] * low_a[rho] * dth_eb[rho]);
  }
  for (int mu = 0; mu < 4; ++mu) {
    if (u[mu] == 0.0) continue;
    for (int sg = 0; sg < 4; ++sg) {
      if (low_a[sg] == 0.0) continue;
      for (int rho = 0; rho < 4; ++rho) {
        const double G = gam(sg, mu, rho);
        if (G == 0.0 || eb[rho] == 0.0) continue;
        add(u[mu] * G * low_a[sg] * eb[rho]);
      }
    }
  }
  return out;
}

int direction_of(const GeodesicSegment& seg) {
  const int dir = seg.r_end > seg.r_start ? 1 : -1;
  if (seg.consts.eps_r != dir)
    throw InvalidArgument("segment radial sign disagrees with its endpoints");
  return dir;
}

}  // namespace

double wigner_rate_numeric(const SpacetimeParams& params,
                           const NullConstants& consts, const Point& p,
                           const GaugeChoice& gauge) {
  return connection_contraction(params, consts, p, gauge, 1, 2).value;
}

RateSample wigner_rate_numeric_scaled(const SpacetimeParams& params,
                                      const NullConstants& consts,
                                      const Point& p,
                                      const GaugeChoice& gauge) {
  const Contraction c = connection_contraction(params, consts, p, gauge, 1, 2);
  return {c.value, c.scale};
}

double frame_connection_component(const SpacetimeParams& params,
                                  const NullConstants& consts, const Point& p,
                                  const GaugeChoice& gauge, int leg_a,
                                  int leg_b) {
  return connection_contraction(params, consts, p, gauge, leg_a, leg_b).value;
}

double wigner_rate_perturbative(const SpacetimeParams& params,
                                const NullConstants& consts, double r) {
  if (consts.l_phi != 0.0)
    throw InvalidArgument("perturbative rate requires l_phi == 0");
  require_exterior(params, r);
  const double kappa = consts.kappa;
  if (r * r <= kappa)
    throw DegenerateKappa("perturbative rate has a pole at r^2 = kappa");
  const double eps = params.epsilon();
  return -(consts.eps_r / r) * ((3.0 * r * r - kappa) / (r * r - kappa)) *
         std::sqrt(kappa * params.surface_radius / (2.0 * r * r * r)) * eps;
}

PhaseResult wigner_phase_numeric(const GeodesicSegment& seg,
                                 const GaugeChoice& gauge,
                                 const QuadTolerances& tol) {
  PhaseResult out;
  out.method = PhaseMethod::numeric;
  out.gauge = gauge;
  if (seg.r_start == seg.r_end) return out;
  direction_of(seg);

  const SpacetimeParams& sp = seg.params;
  const double a = std::min(seg.r_start, seg.r_end);
  const double b = std::max(seg.r_start, seg.r_end);
  const double M = sp.mass;
  const double kappa = seg.consts.kappa;

  // r = a + s^2 absorbs a turning point at the lower endpoint. The radial
  // radicand expands exactly as N_a + s^2(3a^2 - kappa) + 3a s^4 + s^6 with
  // every term nonnegative for a > 3M, so |u^r| is computed without
  // cancellation however close kappa sits to its bound.
  const double Na = std::max(a * a * a - (a - 2.0 * M) * kappa, 0.0);
  const double c2 = 3.0 * a * a - kappa;

  const auto integrand = [&](double s) -> num::QuadSample {
    const double r = a + s * s;
    // The rate of every supported gauge (B a function of r alone) does not
    // depend on theta, so the sweep need not be tracked under the integral.
    // Evaluating at the equator keeps paired ascending and descending legs
    // bitwise mirror images of each other regardless of their sweeps.
    const Point p{0.0, r, std::numbers::pi / 2.0, seg.phi0};
    const RateSample rs = wigner_rate_numeric_scaled(sp, seg.consts, p, gauge);
    const double P = Na + s * s * (c2 + s * s * (3.0 * a + s * s));
    const double abs_ur = std::sqrt(sp.f(r) * P / (r * r * r));
    const double jac = 2.0 * s / abs_ur;
    return {rs.rate * jac, rs.cancellation_scale * jac};
  };

  const auto q = num::integrate_adaptive_aux(integrand, 0.0, std::sqrt(b - a),
                                             tol.abs_tol, tol.rel_tol);
  // The radial sign of the rate and of u^r cancel, so the ascending-in-r
  // integral already carries the traversal direction.
  out.phase = q.value;
  out.error_estimate =
      q.error + 8.0 * std::numeric_limits<double>::epsilon() * q.aux;
  return out;
}

PhaseResult wigner_phase_closed(const GeodesicSegment& seg) {
  PhaseResult out;
  out.method = PhaseMethod::closed_form;
  out.gauge = GaugeChoice::chosen();
  const double kappa = seg.consts.kappa;
  if (seg.r_start == seg.r_end || kappa == 0.0) return out;
  direction_of(seg);
  const double rmin = std::min(seg.r_start, seg.r_end);
  if (kappa >= rmin * rmin)
    throw DegenerateKappa("closed-form phase requires kappa < min(r)^2");
  const double M = seg.params.mass;
  const auto x = [&](double r) {
    return std::sqrt(2.0 * M * kappa / (r * (r * r - kappa)));
  };
  out.phase = x(seg.r_end) - x(seg.r_start);
  return out;
}

PolarizationState transport_polarization(const GeodesicSegment& seg,
                                         const PolarizationState& psi0,
                                         const GaugeChoice& gauge) {
  if (seg.r_start == seg.r_end) return psi0;
  direction_of(seg);
  const SpacetimeParams& sp = seg.params;

  const auto rhs = [&](double r, const num::State2& y) -> num::State2 {
    const Point p{0.0, r, std::numbers::pi / 2.0, seg.phi0};
    const double rate = wigner_rate_numeric(sp, seg.consts, p, gauge);
    const double f = sp.f(r);
    const double D = 1.0 - f * seg.consts.kappa / (r * r);
    const double ur =
        seg.consts.eps_r * std::sqrt(f) * std::sqrt(std::max(D, 0.0));
    const double rho = rate / ur;
    return {-rho * y[1], rho * y[0]};
  };
  const auto y =
      num::integrate_ode_rk45(rhs, {psi0.psi1, psi0.psi2}, seg.r_start,
                              seg.r_end, num::ode_rel_tol, num::ode_abs_tol);
  return {y[0], y[1]};
}

}  // namespace wigner
