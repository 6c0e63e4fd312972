#include "wigner/schemes.hpp"

#include <cmath>
#include <limits>

#include "wigner/errors.hpp"
#include "wigner/geodesics.hpp"

namespace wigner {

namespace {

int sign_or(double delta, int fallback) {
  if (delta > 0.0) return 1;
  if (delta < 0.0) return -1;
  return fallback;
}

// sqrt(2 y / (R^2 - y)), the radius-local factor shared by the leg-wise
// closed forms.
double k_factor(double R, double y) {
  if (!(y >= 0.0)) throw InvalidArgument("kappa must be >= 0");
  if (y >= R * R)
    throw DegenerateKappa("closed form needs kappa below the squared radius");
  return std::sqrt(2.0 * y / (R * R - y));
}

GeodesicSegment make_segment(const SpacetimeParams& params,
                             const NullConstants& consts, double r_from,
                             double r_to, double theta_from) {
  return GeodesicSegment{params, consts, r_from, r_to, theta_from, 0.0};
}

bool near(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * (std::fabs(a) + std::fabs(b));
}

bool shape_one_satellite(const SchemePath& path) {
  if (path.segments.size() != 3) return false;
  const auto& up = path.segments[0];
  const auto& down = path.segments[1];
  const auto& ground = path.segments[2];
  const double surface = up.params.surface_radius;
  return near(up.r_start, surface) && up.r_end > up.r_start &&
         near(down.r_start, up.r_end) && near(down.r_end, surface) &&
         ground.r_start == ground.r_end && near(ground.r_start, surface);
}

bool shape_two_satellites(const SchemePath& path) {
  if (path.segments.size() != 3 && path.segments.size() != 4) return false;
  const auto& up = path.segments[0];
  const auto& mid = path.segments[1];
  const auto& down = path.segments[2];
  const double surface = up.params.surface_radius;
  if (!(near(up.r_start, surface) && up.r_end > up.r_start)) return false;
  if (!(near(mid.r_start, up.r_end) && mid.r_end != mid.r_start)) return false;
  if (!(near(down.r_start, mid.r_end) && near(down.r_end, surface)))
    return false;
  if (path.segments.size() == 4) {
    const auto& ground = path.segments[3];
    if (!(ground.r_start == ground.r_end && near(ground.r_start, surface)))
      return false;
  }
  return true;
}

void check_continuity(const SchemePath& path) {
  if (path.segments.empty())
    throw InvalidArgument("a scheme path needs at least one segment");
  if (path.closed && path.reflections.size() != path.segments.size())
    throw InvalidArgument("a closed path pairs each segment with a vertex");
  for (size_t i = 0; i < path.reflections.size(); ++i) {
    const auto& seg = path.segments[i];
    const auto& vertex = path.reflections[i];
    if (!near(seg.r_end, vertex.r))
      throw InvalidArgument("reflection vertex detached from its segment");
    if (i + 1 < path.segments.size() &&
        !near(path.segments[i + 1].r_start, vertex.r))
      throw InvalidArgument("segment does not launch from its vertex");
  }
}

}  // namespace

NullConstants reflect(const SpacetimeParams& params,
                      const NullConstants& incoming,
                      const ReflectionEvent& event, double r_target,
                      double theta_target) {
  require_exterior(params, event.r);
  require_exterior(params, r_target);
  require_polar_band(event.theta);
  require_polar_band(theta_target);

  NullConstants out;
  const double factor =
      event.kind == ReflectorKind::static_mirror ? 1.0 : event.energy_factor;
  if (!(factor > 0.0))
    throw InvalidArgument("reflection energy factor must be positive");
  out.energy = incoming.energy * factor;
  out.l_phi = 0.0;
  out.eps_r = sign_or(r_target - event.r, 1);
  out.eps_theta = sign_or(theta_target - event.theta, 1);
  const double sweep = std::fabs(theta_target - event.theta);
  out.kappa = (r_target == event.r)
                  ? 0.0
                  : solve_kappa(params, event.r, r_target, sweep);
  return out;
}

double phase_one_satellite(const SpacetimeParams& params, double r_sat,
                           double kappa_up, double kappa_down) {
  if (!(r_sat > params.surface_radius))
    throw InvalidArgument("satellite radius must exceed the surface radius");
  const double surface = params.surface_radius;
  const double root_q = std::sqrt(surface / r_sat);
  return params.epsilon() *
         (root_q * (k_factor(r_sat, kappa_up) - k_factor(r_sat, kappa_down)) +
          (k_factor(surface, kappa_down) - k_factor(surface, kappa_up)));
}

double phase_two_satellites(const SpacetimeParams& params, double r_sat1,
                            double r_sat2, double kappa_up, double kappa_mid,
                            double kappa_down) {
  if (!(r_sat1 > params.surface_radius) || !(r_sat2 > params.surface_radius))
    throw InvalidArgument("satellite radii must exceed the surface radius");
  const double surface = params.surface_radius;
  const double q1 = std::sqrt(surface / r_sat1);
  const double q2 = std::sqrt(surface / r_sat2);
  return params.epsilon() *
         (q1 * (k_factor(r_sat1, kappa_up) - k_factor(r_sat1, kappa_mid)) +
          q2 * (k_factor(r_sat2, kappa_mid) - k_factor(r_sat2, kappa_down)) +
          (k_factor(surface, kappa_down) - k_factor(surface, kappa_up)));
}

double phase_one_satellite_smallangle(const SpacetimeParams& params,
                                      double r_sat, double dtheta_up,
                                      double dtheta_down) {
  if (!(r_sat > params.surface_radius))
    throw InvalidArgument("satellite radius must exceed the surface radius");
  const double q = params.surface_radius / r_sat;
  const double shape = (1.0 - q * std::sqrt(q)) / (1.0 - q);
  return std::sqrt(2.0) * (std::fabs(dtheta_down) - std::fabs(dtheta_up)) *
         shape * params.epsilon();
}

SchemePhaseBreakdown evaluate_scheme(const SchemePath& path,
                                     const GaugeChoice& gauge,
                                     std::optional<SchemeTemplate> expect,
                                     const QuadTolerances& tol) {
  check_continuity(path);

  const bool is_one = shape_one_satellite(path);
  const bool is_two = !is_one && shape_two_satellites(path);
  if (expect) {
    if (*expect == SchemeTemplate::one_satellite && !is_one)
      throw SchemeTemplateMismatch("path does not form a one-satellite loop");
    if (*expect == SchemeTemplate::two_satellites && !is_two)
      throw SchemeTemplateMismatch("path does not form a two-satellite loop");
  }

  SchemePhaseBreakdown out;
  out.per_segment.reserve(path.segments.size());
  bool closed_ok = true;
  for (const auto& seg : path.segments) {
    out.per_segment.push_back(wigner_phase_numeric(seg, gauge, tol));
    out.total += out.per_segment.back().phase;
    out.total_error += out.per_segment.back().error_estimate;
    if (closed_ok) {
      try {
        out.closed_form_total += wigner_phase_closed(seg).phase;
      } catch (const DegenerateKappa&) {
        closed_ok = false;
      }
    }
  }
  if (!closed_ok)
    out.closed_form_total = std::numeric_limits<double>::quiet_NaN();

  if (expect)
    out.matched_template = *expect;
  else if (is_one)
    out.matched_template = SchemeTemplate::one_satellite;
  else if (is_two)
    out.matched_template = SchemeTemplate::two_satellites;
  else
    out.matched_template = SchemeTemplate::custom_path;

  const auto& segs = path.segments;
  try {
    switch (*out.matched_template) {
      case SchemeTemplate::one_satellite:
        out.template_total = phase_one_satellite(segs[0].params, segs[0].r_end,
                                                 segs[0].consts.kappa,
                                                 segs[1].consts.kappa);
        break;
      case SchemeTemplate::two_satellites:
        out.template_total = phase_two_satellites(
            segs[0].params, segs[0].r_end, segs[1].r_end, segs[0].consts.kappa,
            segs[1].consts.kappa, segs[2].consts.kappa);
        break;
      case SchemeTemplate::custom_path:
        out.template_total = out.closed_form_total;
        break;
    }
  } catch (const DegenerateKappa&) {
    out.template_total = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

SchemePath make_one_satellite_path(const SpacetimeParams& params, double r_sat,
                                   double theta_lab1, double theta_sat,
                                   double theta_lab2,
                                   double satellite_energy_factor) {
  if (!(r_sat > params.surface_radius))
    throw InvalidArgument("satellite radius must exceed the surface radius");
  require_polar_band(theta_lab1);
  require_polar_band(theta_sat);
  require_polar_band(theta_lab2);
  const double surface = params.surface_radius;

  SchemePath path;
  path.reflections = {
      {r_sat, theta_sat, ReflectorKind::orbiting_satellite,
       satellite_energy_factor},
      {surface, theta_lab2, ReflectorKind::static_mirror, 1.0},
      {surface, theta_lab1, ReflectorKind::static_mirror, 1.0},
  };

  NullConstants up;
  up.kappa = solve_kappa(params, surface, r_sat,
                         std::fabs(theta_sat - theta_lab1));
  up.eps_r = 1;
  up.eps_theta = sign_or(theta_sat - theta_lab1, 1);
  path.segments.push_back(make_segment(params, up, surface, r_sat, theta_lab1));

  const NullConstants down =
      reflect(params, up, path.reflections[0], surface, theta_lab2);
  path.segments.push_back(make_segment(params, down, r_sat, surface, theta_sat));

  const NullConstants ground =
      reflect(params, down, path.reflections[1], surface, theta_lab1);
  path.segments.push_back(
      make_segment(params, ground, surface, surface, theta_lab2));
  return path;
}

SchemePath make_two_satellite_path(const SpacetimeParams& params, double r_sat1,
                                   double r_sat2, double theta_lab1,
                                   double theta_sat1, double theta_sat2,
                                   double theta_lab2,
                                   double satellite_energy_factor) {
  if (!(r_sat1 > params.surface_radius) || !(r_sat2 > params.surface_radius))
    throw InvalidArgument("satellite radii must exceed the surface radius");
  if (r_sat1 == r_sat2)
    throw DegenerateRadii("inter-satellite leg needs distinct radii");
  require_polar_band(theta_lab1);
  require_polar_band(theta_sat1);
  require_polar_band(theta_sat2);
  require_polar_band(theta_lab2);
  const double surface = params.surface_radius;

  SchemePath path;
  path.reflections = {
      {r_sat1, theta_sat1, ReflectorKind::orbiting_satellite,
       satellite_energy_factor},
      {r_sat2, theta_sat2, ReflectorKind::orbiting_satellite,
       satellite_energy_factor},
      {surface, theta_lab2, ReflectorKind::static_mirror, 1.0},
  };

  NullConstants up;
  up.kappa = solve_kappa(params, surface, r_sat1,
                         std::fabs(theta_sat1 - theta_lab1));
  up.eps_r = 1;
  up.eps_theta = sign_or(theta_sat1 - theta_lab1, 1);
  path.segments.push_back(
      make_segment(params, up, surface, r_sat1, theta_lab1));

  const NullConstants mid =
      reflect(params, up, path.reflections[0], r_sat2, theta_sat2);
  path.segments.push_back(
      make_segment(params, mid, r_sat1, r_sat2, theta_sat1));

  const NullConstants down =
      reflect(params, mid, path.reflections[1], surface, theta_lab2);
  path.segments.push_back(
      make_segment(params, down, r_sat2, surface, theta_sat2));

  if (theta_lab2 != theta_lab1) {
    const NullConstants ground =
        reflect(params, down, path.reflections[2], surface, theta_lab1);
    path.segments.push_back(
        make_segment(params, ground, surface, surface, theta_lab2));
    path.reflections.push_back(
        {surface, theta_lab1, ReflectorKind::static_mirror, 1.0});
  }
  return path;
}

SchemePath make_custom_path(const SpacetimeParams& params,
                            const std::vector<Waypoint>& waypoints) {
  if (waypoints.size() < 2)
    throw InvalidArgument("a custom path needs at least two waypoints");
  for (const auto& w : waypoints) {
    require_exterior(params, w.r);
    require_polar_band(w.theta);
  }

  SchemePath path;
  const size_t n = waypoints.size();
  for (size_t i = 0; i < n; ++i) {
    const Waypoint& from = waypoints[i];
    const Waypoint& to = waypoints[(i + 1) % n];
    NullConstants consts;
    if (i == 0) {
      consts.eps_r = sign_or(to.r - from.r, 1);
      consts.eps_theta = sign_or(to.theta - from.theta, 1);
      consts.kappa = (to.r == from.r)
                         ? 0.0
                         : solve_kappa(params, from.r, to.r,
                                       std::fabs(to.theta - from.theta));
    } else {
      const ReflectionEvent& vertex = path.reflections.back();
      consts = reflect(params, path.segments.back().consts, vertex, to.r,
                       to.theta);
    }
    path.segments.push_back(
        make_segment(params, consts, from.r, to.r, from.theta));
    path.reflections.push_back(
        {to.r, to.theta, ReflectorKind::static_mirror, 1.0});
  }
  return path;
}

}  // namespace wigner
