#include "wigner/geodesics.hpp"

#include <algorithm>
#include <cmath>

#include "wigner/numerics.hpp"

namespace wigner {

namespace {

void require_signs(const NullConstants& c) {
  if ((c.eps_r != 1 && c.eps_r != -1) || (c.eps_theta != 1 && c.eps_theta != -1))
    throw InvalidArgument("direction signs must be +1 or -1");
  if (!(c.energy > 0.0)) throw InvalidArgument("photon energy must be positive");
  if (!(c.kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
}

// Numerator of the radial radicand, r^3 - (r - 2M) kappa_total. The radial
// momentum component is eps_r sqrt(N / r^3). N is increasing in r for
// r > 3M, so a sign change can only happen at the lower end of a segment.
double radial_numerator(const SpacetimeParams& params, double kappa_total,
                        double r) {
  return r * r * r - (r - 2.0 * params.mass) * kappa_total;
}

}  // namespace

double dot(const SpacetimeParams& params, const Point& p, const FourVector& a,
           const FourVector& b) {
  const MetricDiag g = metric_at(params, p);
  return g.tt * a.t * b.t + g.rr * a.r * b.r + g.thth * a.theta * b.theta +
         g.phph * a.phi * b.phi;
}

FourVector null_vector_general(const SpacetimeParams& params,
                               const NullConstants& consts, const Point& p) {
  require_exterior(params, p.r);
  require_polar_band(p.theta);
  require_signs(consts);

  const double r = p.r;
  const double f = params.f(r);
  const double l = consts.l_phi;
  const double kap = consts.kappa;
  const double sin_th = std::sin(p.theta);
  const double cot_th = std::cos(p.theta) / sin_th;

  const double rad_r = 1.0 - f * (l * l + kap) / (r * r);
  if (rad_r < -1e-12)
    throw ForbiddenRegion("radial momentum radicand negative");

  const double rad_th = kap - l * l * cot_th * cot_th;
  const double th_scale = kap + l * l * cot_th * cot_th;
  if (rad_th < -1e-12 * std::max(th_scale, 1.0))
    throw ForbiddenRegion("polar momentum radicand negative");

  const double e = consts.energy;
  FourVector k;
  k.t = e / f;
  k.r = e * consts.eps_r * std::sqrt(std::max(rad_r, 0.0));
  k.theta = e * consts.eps_theta * std::sqrt(std::max(rad_th, 0.0)) / (r * r);
  k.phi = e * l / (r * r * sin_th * sin_th);
  return k;
}

FourVector null_vector_constphi(const SpacetimeParams& params,
                                const NullConstants& consts, const Point& p) {
  if (consts.l_phi != 0.0)
    throw InvalidArgument("constant-phi ray requires l_phi == 0");
  return null_vector_general(params, consts, p);
}

double kappa_max(const SpacetimeParams& params, double R1, double R2) {
  require_exterior(params, R1);
  require_exterior(params, R2);
  const double k1 = R1 * R1 / params.f(R1);
  const double k2 = R2 * R2 / params.f(R2);
  return std::min(k1, k2);
}

double delta_theta_of_kappa(const SpacetimeParams& params, double R1,
                            double R2, double kappa) {
  require_exterior(params, R1);
  require_exterior(params, R2);
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
  if (kappa == 0.0 || R1 == R2) return 0.0;

  const double kmax = kappa_max(params, R1, R2);
  if (kappa > kmax * (1.0 + 1e-12))
    throw TurningPointInside("kappa admits a turning point inside the span");

  const double a = std::min(R1, R2);
  const double b = std::max(R1, R2);
  const double sqrt_kappa = std::sqrt(kappa);

  // Substitute r = a + s^2 to absorb the inverse-square-root behaviour when
  // the lower endpoint sits at (or near) the radial turning point. The
  // radicand numerator expands exactly in s^2 with nonnegative terms for
  // r > 3M, so the integrand stays real all the way into the endpoint.
  const double n_a = std::max(radial_numerator(params, kappa, a), 0.0);
  const double c2 = 3.0 * a * a - kappa;
  const double c4 = 3.0 * a;

  const auto integrand = [&](double s) {
    const double s2 = s * s;
    const double r = a + s2;
    const double n = n_a + s2 * (c2 + s2 * (c4 + s2));
    return 2.0 * s * sqrt_kappa / (std::sqrt(r) * std::sqrt(n));
  };

  const auto q = num::integrate_adaptive(integrand, 0.0, std::sqrt(b - a),
                                         num::quad_abs_tol, 1e-13);
  return q.value;
}

double solve_kappa(const SpacetimeParams& params, double R1, double R2,
                   double delta_theta) {
  require_exterior(params, R1);
  require_exterior(params, R2);
  if (R1 == R2)
    throw DegenerateRadii("solve_kappa requires distinct radii");
  if (!(delta_theta >= 0.0))
    throw InvalidArgument("target sweep must be >= 0");
  if (delta_theta == 0.0) return 0.0;

  const double k_hi = kappa_max(params, R1, R2) * (1.0 - 1e-12);
  const double sweep_hi = delta_theta_of_kappa(params, R1, R2, k_hi);
  if (delta_theta > sweep_hi)
    throw Unreachable("requested sweep exceeds the turning-point-free range");

  const auto gap = [&](double kappa) {
    return delta_theta_of_kappa(params, R1, R2, kappa) - delta_theta;
  };
  return num::brent_root(gap, 0.0, k_hi, 1e-13);
}

double kappa_small_angle(double R1, double R2, double delta_theta) {
  if (R1 == R2)
    throw DegenerateRadii("small-angle closure requires distinct radii");
  const double chord = R1 * R2 * delta_theta / (R1 - R2);
  return chord * chord;
}

std::vector<Point> sample_segment(const GeodesicSegment& seg, int n) {
  if (n < 2) throw InvalidArgument("sample_segment requires n >= 2");
  require_signs(seg.consts);
  if (seg.consts.l_phi != 0.0)
    throw InvalidArgument("segments are constant-phi rays (l_phi == 0)");

  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(n));

  if (seg.r_start == seg.r_end) {
    for (int i = 0; i < n; ++i)
      pts.push_back({0.0, seg.r_start, seg.theta_start, seg.phi0});
    return pts;
  }

  double theta = seg.theta_start;
  require_polar_band(theta);
  pts.push_back({0.0, seg.r_start, theta, seg.phi0});
  for (int i = 1; i < n; ++i) {
    const double r_prev =
        seg.r_start + (seg.r_end - seg.r_start) * (i - 1) / (n - 1.0);
    const double r_here = (i == n - 1)
                              ? seg.r_end
                              : seg.r_start +
                                    (seg.r_end - seg.r_start) * i / (n - 1.0);
    const double sweep = delta_theta_of_kappa(
        seg.params, std::min(r_prev, r_here), std::max(r_prev, r_here),
        seg.consts.kappa);
    theta += seg.consts.eps_theta * sweep;
    require_polar_band(theta);
    pts.push_back({0.0, r_here, theta, seg.phi0});
  }
  return pts;
}

}  // namespace wigner
