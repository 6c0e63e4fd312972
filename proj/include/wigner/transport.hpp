#pragma once

#include "wigner/frames.hpp"

namespace wigner {

// Rotation rate sample along a segment profile.
struct WignerRotationSample {
  double r = 0.0;
  double rate = 0.0;
};

enum class PhaseMethod { numeric, closed_form, perturbative_rate };

struct PhaseResult {
  double phase = 0.0;           // rad
  PhaseMethod method = PhaseMethod::numeric;
  GaugeChoice gauge;
  double error_estimate = 0.0;  // rad, absolute
};

// Optional accuracy overrides for the numeric phase quadrature.
struct QuadTolerances {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
};

// Instantaneous rotation rate of the transverse frame about the ray,
// u^mu w_mu^1_2, built from the spin connection of the adapted tetrad.
// Constant-phi rays only (consts.l_phi == 0). Independent of consts.energy.
double wigner_rate_numeric(const SpacetimeParams& params,
                           const NullConstants& consts, const Point& p,
                           const GaugeChoice& gauge);

// Same contraction with an absolute-magnitude tally of every summand; the
// tally bounds the rounding noise of the analytically cancelling terms and
// feeds the error floor of the phase quadrature.
struct RateSample {
  double rate = 0.0;
  double cancellation_scale = 0.0;
};
RateSample wigner_rate_numeric_scaled(const SpacetimeParams& params,
                                      const NullConstants& consts,
                                      const Point& p, const GaugeChoice& gauge);

// Transverse-frame connection component u^mu w_mu^a_b for any leg pair;
// wigner_rate_numeric is the (1,2) component. Exposed for antisymmetry and
// derivative-oracle tests.
double frame_connection_component(const SpacetimeParams& params,
                                  const NullConstants& consts, const Point& p,
                                  const GaugeChoice& gauge, int leg_a,
                                  int leg_b);

// Leading-order closed form of the chosen-gauge rate,
// -(eps_r / r) (3r^2 - kappa)/(r^2 - kappa) sqrt(kappa R_E / (2 r^3)) epsilon.
double wigner_rate_perturbative(const SpacetimeParams& params,
                                const NullConstants& consts, double r);

// Accumulated rotation angle over a segment by adaptive quadrature of the
// numeric rate against dr / u^r, with a square-root substitution absorbing
// the turning-point endpoint. The error estimate adds a rounding floor from
// the cancellation scale of the rate terms.
PhaseResult wigner_phase_numeric(const GeodesicSegment& seg,
                                 const GaugeChoice& gauge,
                                 const QuadTolerances& tol = {});

// Leading-order closed form of the chosen-gauge segment phase,
// [sqrt(R_E/R2) sqrt(2 kappa/(R2^2-kappa))
//  - sqrt(R_E/R1) sqrt(2 kappa/(R1^2-kappa))] epsilon.
PhaseResult wigner_phase_closed(const GeodesicSegment& seg);

// Parallel-transport the transverse polarization components across a segment
// by integrating d psi1/dlambda = -rate psi2, d psi2/dlambda = +rate psi1
// with r as the independent variable.
PolarizationState transport_polarization(const GeodesicSegment& seg,
                                         const PolarizationState& psi0,
                                         const GaugeChoice& gauge);

}  // namespace wigner
