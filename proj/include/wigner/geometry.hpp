#pragma once

#include <cmath>

#include "wigner/errors.hpp"

namespace wigner {

// Polar angles are kept this far away from the coordinate axis; closer in,
// the phi sector of the chart degenerates and frame components blow up.
inline constexpr double pole_theta_min = 1e-6;

namespace si {
inline constexpr double c = 299792458.0;         // m/s
inline constexpr double G = 6.67430e-11;         // m^3 kg^-1 s^-2
// Geometric mass in meters, G m / c^2.
inline double geometric_mass_from_kg(double mass_kg) {
  return G * mass_kg / (c * c);
}
}  // namespace si

// Static exterior Schwarzschild background in units G = c = 1, so the mass
// is a length. surface_radius is the reference radius R_E of the ground
// stations and fixes the expansion parameter epsilon = sqrt(M / R_E).
struct SpacetimeParams {
  double mass = 0.0;            // m
  double surface_radius = 0.0;  // m

  SpacetimeParams(double mass_m, double surface_radius_m)
      : mass(mass_m), surface_radius(surface_radius_m) {
    if (!(mass >= 0.0) || !std::isfinite(mass))
      throw InvalidArgument("SpacetimeParams: mass must be finite and >= 0");
    if (!(surface_radius > 2.0 * mass) || !std::isfinite(surface_radius))
      throw InvalidArgument(
          "SpacetimeParams: surface radius must exceed the horizon radius");
  }

  double f(double r) const { return 1.0 - 2.0 * mass / r; }
  double epsilon() const { return std::sqrt(mass / surface_radius); }
  double horizon_radius() const { return 2.0 * mass; }
};

// Coordinate event (t, r, theta, phi) in Schwarzschild coordinates.
struct Point {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// Diagonal metric components g_tt, g_rr, g_thth, g_phph at a point.
struct MetricDiag {
  double tt = 0.0;
  double rr = 0.0;
  double thth = 0.0;
  double phph = 0.0;
};

// All Christoffel symbols Gamma^sigma_{mu rho}; indices 0..3 = t, r, th, ph.
struct ChristoffelTable {
  double g[4][4][4] = {};
  double operator()(int sigma, int mu, int rho) const {
    return g[sigma][mu][rho];
  }
};

// Throws RadiusInsideHorizon unless r > 2M.
void require_exterior(const SpacetimeParams& params, double r);

// Throws PolarSingularity unless theta is inside the admissible polar band.
void require_polar_band(double theta);

MetricDiag metric_at(const SpacetimeParams& params, const Point& p);

ChristoffelTable christoffel_at(const SpacetimeParams& params, const Point& p);

// Locally measured angular frequency of a photon of conserved energy E_p as
// seen by the static observer at radius r: E_p / sqrt(f(r)).
double frequency_at(const SpacetimeParams& params, double energy, double r);

}  // namespace wigner
