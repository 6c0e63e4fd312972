#include "wigner/geometry.hpp"

#include <cmath>
#include <numbers>

namespace wigner {

void require_exterior(const SpacetimeParams& params, double r) {
  if (!(r > params.horizon_radius()) || !std::isfinite(r))
    throw RadiusInsideHorizon("radius not outside the horizon");
}

void require_polar_band(double theta) {
  if (!(theta >= pole_theta_min) ||
      !(theta <= std::numbers::pi - pole_theta_min))
    throw PolarSingularity("polar angle too close to the coordinate axis");
}

MetricDiag metric_at(const SpacetimeParams& params, const Point& p) {
  require_exterior(params, p.r);
  const double f = params.f(p.r);
  const double s = std::sin(p.theta);
  MetricDiag g;
  g.tt = -f;
  g.rr = 1.0 / f;
  g.thth = p.r * p.r;
  g.phph = p.r * p.r * s * s;
  return g;
}

ChristoffelTable christoffel_at(const SpacetimeParams& params, const Point& p) {
  require_exterior(params, p.r);
  require_polar_band(p.theta);

  const double M = params.mass;
  const double r = p.r;
  const double f = params.f(r);
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);

  enum { T, R, TH, PH };
  ChristoffelTable G;
  G.g[T][T][R] = G.g[T][R][T] = M / (r * r * f);
  G.g[R][T][T] = M * f / (r * r);
  G.g[R][R][R] = -M / (r * r * f);
  G.g[R][TH][TH] = -(r - 2.0 * M);
  G.g[R][PH][PH] = -(r - 2.0 * M) * s * s;
  G.g[TH][R][TH] = G.g[TH][TH][R] = 1.0 / r;
  G.g[TH][PH][PH] = -s * c;
  G.g[PH][R][PH] = G.g[PH][PH][R] = 1.0 / r;
  G.g[PH][TH][PH] = G.g[PH][PH][TH] = c / s;
  return G;
}

double frequency_at(const SpacetimeParams& params, double energy, double r) {
  require_exterior(params, r);
  return energy / std::sqrt(params.f(r));
}

}  // namespace wigner
