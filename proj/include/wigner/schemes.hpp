#pragma once

#include <optional>
#include <vector>

#include "wigner/transport.hpp"

namespace wigner {

enum class ReflectorKind { static_mirror, orbiting_satellite };

// Reflection vertex between two segments. A static mirror preserves the
// photon energy (factor 1); an orbiting satellite may shift it, which leaves
// every accumulated rotation angle untouched.
struct ReflectionEvent {
  double r = 0.0;
  double theta = 0.0;
  ReflectorKind kind = ReflectorKind::static_mirror;
  double energy_factor = 1.0;
};

enum class SchemeTemplate { one_satellite, two_satellites, custom_path };

// Piecewise-geodesic closed loop: segment i ends at reflections[i], which
// launches segment i+1; the final reflection closes the loop at the start of
// segment 0 and restores the initial direction.
struct SchemePath {
  std::vector<GeodesicSegment> segments;
  std::vector<ReflectionEvent> reflections;
  bool closed = true;
};

// Constants of the outgoing ray at a reflection event, aimed at the next
// target endpoint: kappa re-solved from the sweep to the target, direction
// signs from the target offsets, energy scaled by the reflector.
NullConstants reflect(const SpacetimeParams& params,
                      const NullConstants& incoming,
                      const ReflectionEvent& event, double r_target,
                      double theta_target);

// Closed-form loop totals at leading order in epsilon. K_X(y) is
// sqrt(2y / (R_X^2 - y)).
double phase_one_satellite(const SpacetimeParams& params, double r_sat,
                           double kappa_up, double kappa_down);
double phase_two_satellites(const SpacetimeParams& params, double r_sat1,
                            double r_sat2, double kappa_up, double kappa_mid,
                            double kappa_down);

// Small-sweep limit of the one-satellite loop,
// sqrt(2) (|dtheta'| - |dtheta|) (1 - q^{3/2}) / (1 - q) epsilon with
// q = R_E / R_s.
double phase_one_satellite_smallangle(const SpacetimeParams& params,
                                      double r_sat, double dtheta_up,
                                      double dtheta_down);

struct SchemePhaseBreakdown {
  std::vector<PhaseResult> per_segment;
  double total = 0.0;                // quadrature sum, rad
  double total_error = 0.0;          // summed error estimates, rad
  double closed_form_total = 0.0;    // segment-wise closed forms, rad
  std::optional<SchemeTemplate> matched_template;
  double template_total = 0.0;       // template closed form when matched, rad
};

// Numeric and closed-form totals of a path. When expect names a template the
// path shape must match it or SchemeTemplateMismatch is thrown.
SchemePhaseBreakdown evaluate_scheme(
    const SchemePath& path, const GaugeChoice& gauge,
    std::optional<SchemeTemplate> expect = std::nullopt,
    const QuadTolerances& tol = {});

// Ground stations at (params.surface_radius, theta_lab*), one satellite at
// (r_sat, theta_sat); the lab2 -> lab1 ground return is a zero-length
// connector and the loop closes with a static mirror at lab1.
SchemePath make_one_satellite_path(const SpacetimeParams& params, double r_sat,
                                   double theta_lab1, double theta_sat,
                                   double theta_lab2,
                                   double satellite_energy_factor = 1.0);

// Two satellites; theta_lab2 == theta_lab1 gives the direct-return variant
// with no ground connector.
SchemePath make_two_satellite_path(const SpacetimeParams& params, double r_sat1,
                                   double r_sat2, double theta_lab1,
                                   double theta_sat1, double theta_sat2,
                                   double theta_lab2,
                                   double satellite_energy_factor = 1.0);

// Closed loop through arbitrary (r, theta) waypoints. Legs between waypoints
// at equal radii become zero-length connectors.
struct Waypoint {
  double r = 0.0;
  double theta = 0.0;
};
SchemePath make_custom_path(const SpacetimeParams& params,
                            const std::vector<Waypoint>& waypoints);

}  // namespace wigner
