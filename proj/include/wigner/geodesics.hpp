#pragma once

#include <vector>

#include "wigner/geometry.hpp"

namespace wigner {

// Coordinate-basis vector components (t, r, theta, phi).
struct FourVector {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// g_mu_nu a^mu b^nu at p.
double dot(const SpacetimeParams& params, const Point& p, const FourVector& a,
           const FourVector& b);

// Conserved data of a null geodesic: energy E_p, azimuthal impact parameter
// l_phi = L_phi / E_p (m), total angular constant kappa = K / E_p^2 (m^2),
// and the radial/polar direction signs.
struct NullConstants {
  double energy = 1.0;   // E_p
  double l_phi = 0.0;    // m
  double kappa = 0.0;    // m^2
  int eps_r = +1;
  int eps_theta = +1;
};

// One monotone-in-r arc of a null geodesic at constant phi. A segment with
// r_start == r_end is a zero-length connector and contributes nothing.
struct GeodesicSegment {
  SpacetimeParams params;
  NullConstants consts;
  double r_start = 0.0;
  double r_end = 0.0;
  double theta_start = 0.0;
  double phi0 = 0.0;
};

// Tangent of a general null geodesic (l_phi and kappa both free) at p.
// Throws ForbiddenRegion where a momentum radicand goes negative.
FourVector null_vector_general(const SpacetimeParams& params,
                               const NullConstants& consts, const Point& p);

// Tangent restricted to constant-phi motion; requires l_phi == 0.
FourVector null_vector_constphi(const SpacetimeParams& params,
                                const NullConstants& consts, const Point& p);

// Largest kappa for which a constant-phi ray spans [R1, R2] without an
// interior radial turning point: min(R^2 / f(R)) over the two endpoints.
double kappa_max(const SpacetimeParams& params, double R1, double R2);

// Polar sweep |delta theta| accumulated by a constant-phi ray of constant
// kappa crossing from R1 to R2 (order-insensitive). Zero for kappa == 0.
double delta_theta_of_kappa(const SpacetimeParams& params, double R1,
                            double R2, double kappa);

// Inverts delta_theta_of_kappa on [0, kappa_max); throws Unreachable when the
// requested sweep exceeds what a turning-point-free ray can deliver.
double solve_kappa(const SpacetimeParams& params, double R1, double R2,
                   double delta_theta);

// Flat-space small-angle closure kappa ~ (R1 R2 dtheta / (R1 - R2))^2.
double kappa_small_angle(double R1, double R2, double delta_theta);

// n >= 2 points along a segment, r spaced linearly, theta by cumulative
// quadrature of dtheta/dr. Sampling never reads consts.energy, so paths for
// different photon energies coincide bit for bit.
std::vector<Point> sample_segment(const GeodesicSegment& seg, int n);

}  // namespace wigner
