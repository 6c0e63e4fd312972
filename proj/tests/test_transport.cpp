#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wigner/errors.hpp"
#include "wigner/frames.hpp"
#include "wigner/geometry.hpp"
#include "wigner/numerics.hpp"
#include "wigner/transport.hpp"

using namespace wigner;

namespace {

const SpacetimeParams bh{0.05, 0.2};
const SpacetimeParams earth{4.435e-3, 6.371e6};
constexpr double r_orbit = 4.216e7;

NullConstants ray(double kappa, int eps_r = 1, int eps_theta = 1) {
  NullConstants c;
  c.kappa = kappa;
  c.eps_r = eps_r;
  c.eps_theta = eps_theta;
  return c;
}

// Independent cumulative-angle expression for the chosen gauge, obtained by
// recognizing the rate as an exact derivative along the ray.
double chosen_phase_reference(const SpacetimeParams& sp, double kappa,
                              double r_from, double r_to) {
  auto angle = [&](double r) {
    return std::atan2(std::sqrt(r * (r * r - kappa)),
                      std::sqrt(2.0 * sp.mass * kappa));
  };
  return -(angle(r_to) - angle(r_from));
}

double rate_fd_reference(const SpacetimeParams& sp, const NullConstants& c,
                         const Point& p) {
  // Rebuild the rotation rate from finite differences of the tetrad legs
  // plus the connection table, bypassing the dual-number path entirely.
  const FourVector e0 = static_velocity(sp, p.r);
  const FourVector e3 = third_leg(sp, c, p);
  const std::array<double, 4> u{e0.t + e3.t, e0.r + e3.r, e0.theta + e3.theta,
                                e0.phi + e3.phi};

  auto legs_at = [&](double r, double theta) {
    Point q = p;
    q.r = r;
    q.theta = theta;
    const Tetrad t = adapted_tetrad_chosen(sp, c, q);
    return std::array<std::array<double, 4>, 2>{
        std::array<double, 4>{t.e1.t, t.e1.r, t.e1.theta, t.e1.phi},
        std::array<double, 4>{t.e2.t, t.e2.r, t.e2.theta, t.e2.phi}};
  };

  const auto base = legs_at(p.r, p.theta);
  const double hr = 1e-6 * p.r;
  const double ht = 1e-6;
  std::array<double, 4> dr_e2{}, dth_e2{};
  for (int mu = 0; mu < 4; ++mu) {
    auto central = [&](double h, bool radial) {
      const auto plus = radial ? legs_at(p.r + h, p.theta)
                               : legs_at(p.r, p.theta + h);
      const auto minus = radial ? legs_at(p.r - h, p.theta)
                                : legs_at(p.r, p.theta - h);
      return (plus[1][mu] - minus[1][mu]) / (2.0 * h);
    };
    const double dr1 = central(hr, true);
    const double dr2 = central(hr / 2.0, true);
    dr_e2[mu] = (4.0 * dr2 - dr1) / 3.0;
    const double dt1 = central(ht, false);
    const double dt2 = central(ht / 2.0, false);
    dth_e2[mu] = (4.0 * dt2 - dt1) / 3.0;
  }

  const MetricDiag g = metric_at(sp, p);
  const std::array<double, 4> gdiag{g.tt, g.rr, g.thth, g.phph};
  std::array<double, 4> low1{};
  for (int mu = 0; mu < 4; ++mu) low1[mu] = gdiag[mu] * base[0][mu];

  const ChristoffelTable gam = christoffel_at(sp, p);
  double w = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    w += low1[mu] * (u[1] * dr_e2[mu] + u[2] * dth_e2[mu]);
  for (int sg = 0; sg < 4; ++sg)
    for (int m = 0; m < 4; ++m)
      for (int rho = 0; rho < 4; ++rho)
        w += u[m] * gam(sg, m, rho) * low1[sg] * base[1][rho];
  return w;
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("rotation rate matches the pinned strong-field value") {
  const Point p{0.0, 14.0, 1.2, 0.0};
  const double got =
      wigner_rate_numeric(bh, ray(30.0), p, GaugeChoice::chosen());
  CHECK(got ==
        doctest::Approx(-3.9527550837544135e-3).epsilon(1e-12));
}

TEST_CASE("rotation rate does not depend on the polar angle") {
  const NullConstants c = ray(30.0, 1, -1);
  const double a =
      wigner_rate_numeric(bh, c, {0.0, 14.0, 0.7, 0.0}, GaugeChoice::chosen());
  const double b =
      wigner_rate_numeric(bh, c, {0.0, 14.0, 2.1, 0.0}, GaugeChoice::chosen());
  const double mid =
      wigner_rate_numeric(bh, c, {0.0, 14.0, 1.2, 0.0}, GaugeChoice::chosen());
  CHECK(a == doctest::Approx(mid).epsilon(1e-13));
  CHECK(b == doctest::Approx(mid).epsilon(1e-13));
}

TEST_CASE("rate parities under direction and orientation flips") {
  const Point p{0.0, 14.0, 1.2, 0.0};
  const GaugeChoice g = GaugeChoice::chosen();
  const double base = wigner_rate_numeric(bh, ray(30.0, 1, 1), p, g);

  CHECK(wigner_rate_numeric(bh, ray(30.0, -1, 1), p, g) == -base);
  CHECK(wigner_rate_numeric(bh, ray(30.0, 1, -1), p, g) ==
        doctest::Approx(base).epsilon(1e-12));

  GaugeChoice flip1 = g;
  flip1.eta1 = -1;
  CHECK(wigner_rate_numeric(bh, ray(30.0), p, flip1) == -base);
  GaugeChoice flip2 = g;
  flip2.eta2 = -1;
  CHECK(wigner_rate_numeric(bh, ray(30.0), p, flip2) == -base);
}

TEST_CASE("rate matches the pinned value in a custom gauge") {
  const double kappa = 30.0;
  auto bfun = [kappa](double r) {
    return 0.55 * std::sqrt(1.0 - kappa / (r * r)) / r + 0.1 / r;
  };
  auto dbfun = [kappa](double r) {
    const double phi = std::sqrt(1.0 - kappa / (r * r));
    return 0.55 * (kappa / (r * r * phi) - phi) / (r * r) -
           0.1 / (r * r);
  };
  const GaugeChoice g = GaugeChoice::custom(bfun, dbfun);
  const Point p{0.0, 14.0, 1.2, 0.0};
  const double got = wigner_rate_numeric(bh, ray(30.0, 1, -1), p, g);
  CHECK(got == doctest::Approx(1.584431582935273e-3).epsilon(1e-11));

  // and it is polar-angle independent as well
  const double other =
      wigner_rate_numeric(bh, ray(30.0, 1, -1), {0.0, 14.0, 0.6, 0.0}, g);
  CHECK(other == doctest::Approx(got).epsilon(1e-12));
}

TEST_CASE("radial rays produce an exactly zero rate in every gauge") {
  const Point p{0.0, 9.0, 1.0, 0.0};
  for (const GaugeChoice& g :
       {GaugeChoice::chosen(), GaugeChoice::zero(), GaugeChoice::plus_inv_r(),
        GaugeChoice::minus_inv_r()}) {
    const RateSample s = wigner_rate_numeric_scaled(bh, ray(0.0), p, g);
    CHECK(s.rate == 0.0);
    CHECK(s.cancellation_scale == 0.0);
  }
}

TEST_CASE("reference gauge kills the rate identically off the radial case") {
  for (double r : {6.0, 14.0, 55.0}) {
    for (double kappa : {4.0, 30.0}) {
      const RateSample s = wigner_rate_numeric_scaled(
          bh, ray(kappa, 1, -1), {0.0, r, 1.1, 0.0}, GaugeChoice::zero());
      CHECK(s.rate == 0.0);
      CHECK(s.cancellation_scale == 0.0);
    }
  }
}

TEST_CASE("rate vanishes exactly when the mass is removed") {
  const SpacetimeParams flat{0.0, 0.2};
  const double got = wigner_rate_numeric(flat, ray(30.0), {0.0, 14.0, 1.2, 0.0},
                                         GaugeChoice::chosen());
  CHECK(got == 0.0);
}

TEST_CASE("frame connection is antisymmetric in its leg labels") {
  const Point p{0.0, 14.0, 1.2, 0.0};
  NullConstants c = ray(30.0, 1, -1);
  c.l_phi = 0.0;
  for (const GaugeChoice& g : {GaugeChoice::chosen(), GaugeChoice::zero()}) {
    double scale = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        scale = std::max(
            scale, std::fabs(frame_connection_component(bh, c, p, g, a, b)));
    for (int a = 0; a < 4; ++a) {
      const double diag = frame_connection_component(bh, c, p, g, a, a);
      CHECK(std::fabs(diag) <= 1e-12 * scale);
      for (int b = a + 1; b < 4; ++b) {
        const double eta_a = (a == 0) ? -1.0 : 1.0;
        const double eta_b = (b == 0) ? -1.0 : 1.0;
        const double wab = frame_connection_component(bh, c, p, g, a, b);
        const double wba = frame_connection_component(bh, c, p, g, b, a);
        CHECK(std::fabs(eta_a * wab + eta_b * wba) <= 1e-11 * scale);
      }
    }
  }
}

TEST_CASE("rate agrees with a finite-difference rebuild of the connection") {
  const Point p{0.0, 14.0, 1.2, 0.0};
  const NullConstants c = ray(30.0, 1, -1);
  const double fd = rate_fd_reference(bh, c, p);
  const double dual =
      wigner_rate_numeric(bh, c, p, GaugeChoice::chosen());
  CHECK(dual == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("accumulated angle matches the exact reference, strong field") {
  GeodesicSegment seg{bh, ray(30.0, 1, -1), 10.0, 25.0, 1.2, 0.0};
  const PhaseResult up = wigner_phase_numeric(seg, GaugeChoice::chosen());
  CHECK(up.phase ==
        doctest::Approx(-5.11716074218022438e-2).epsilon(1e-12));
  const double ref = chosen_phase_reference(bh, 30.0, 10.0, 25.0);
  CHECK(up.phase == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::fabs(up.phase - ref) <=
        std::max(up.error_estimate, 1e-15 * std::fabs(ref)) * 10.0);
}

TEST_CASE("accumulated angle matches the exact reference on a grid") {
  for (double kappa : {1.0, 10.0, 50.0}) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {8.0, 40.0}, {10.0, 25.0}, {7.3, 9.1}}) {
      const NullConstants up = ray(kappa, 1, -1);
      GeodesicSegment seg{bh, up, a, b, 1.0, 0.0};
      const PhaseResult got = wigner_phase_numeric(seg, GaugeChoice::chosen());
      const double ref = chosen_phase_reference(bh, kappa, a, b);
      CHECK(got.phase == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("reversed traversal flips the accumulated angle bit for bit") {
  GeodesicSegment up{bh, ray(30.0, 1, -1), 10.0, 25.0, 1.2, 0.0};
  GeodesicSegment dn{bh, ray(30.0, -1, -1), 25.0, 10.0, 1.2, 0.0};
  const PhaseResult pu = wigner_phase_numeric(up, GaugeChoice::chosen());
  const PhaseResult pd = wigner_phase_numeric(dn, GaugeChoice::chosen());
  CHECK(pu.phase + pd.phase == 0.0);
}

TEST_CASE("segment direction must match the radial sign") {
  GeodesicSegment bad{bh, ray(30.0, -1, 1), 10.0, 25.0, 1.2, 0.0};
  CHECK_THROWS_AS(wigner_phase_numeric(bad, GaugeChoice::chosen()),
                  InvalidArgument);
  CHECK_THROWS_AS(wigner_phase_closed(bad), InvalidArgument);
}

TEST_CASE("zero-length connector accumulates nothing") {
  GeodesicSegment seg{bh, ray(30.0), 14.0, 14.0, 1.2, 0.0};
  const PhaseResult got = wigner_phase_numeric(seg, GaugeChoice::chosen());
  CHECK(got.phase == 0.0);
  CHECK(got.error_estimate == 0.0);
  CHECK(wigner_phase_closed(seg).phase == 0.0);
}

TEST_CASE("satellite-scale accumulated angle and its closed form") {
  const double kappa = 1e12;
  GeodesicSegment seg{earth, ray(kappa, 1, -1), earth.surface_radius, r_orbit,
                      1.3, 0.0};
  const PhaseResult numeric = wigner_phase_numeric(seg, GaugeChoice::chosen());
  CHECK(numeric.phase ==
        doctest::Approx(-5.586032743253325e-6).epsilon(1e-11));

  const PhaseResult closed = wigner_phase_closed(seg);
  CHECK(closed.phase ==
        doctest::Approx(-5.586032743322827e-6).epsilon(1e-12));

  // The leading-order remainder is tiny but resolvable.
  const double remainder = std::fabs(numeric.phase - closed.phase);
  CHECK(remainder >= 4e-17);
  CHECK(remainder <= 1e-16);
}

TEST_CASE("weak-field rate agrees with the first-order expression") {
  const double kappa = 1e12;
  const double r = 1e7;
  const double pert = wigner_rate_perturbative(earth, ray(kappa, 1, -1), r);
  CHECK(pert == doctest::Approx(-4.497465162564438e-13).epsilon(1e-13));
  const double full = wigner_rate_numeric(earth, ray(kappa, 1, -1),
                                          {0.0, r, 1.3, 0.0},
                                          GaugeChoice::chosen());
  const double gap = std::fabs(full / pert - 1.0);
  CHECK(gap <= 1e-9);
  CHECK(gap >= 1e-10);  // the two routes are not the same computation
}

TEST_CASE("remainders shrink with the third power of the expansion scale") {
  // Hold the geometry fixed and scale the central mass.
  const double r1 = 10.0, r2 = 25.0, kappa = 30.0, rp = 14.0;
  std::vector<double> log_eps, log_phase_rem, log_rate_rem;
  for (double ratio : {1e-3, 1e-4, 1e-5}) {
    const SpacetimeParams sp{ratio * r1, r1};
    GeodesicSegment seg{sp, ray(kappa, 1, -1), r1, r2, 1.2, 0.0};
    const double numeric =
        wigner_phase_numeric(seg, GaugeChoice::chosen()).phase;
    const double closed = wigner_phase_closed(seg).phase;
    log_phase_rem.push_back(std::log(std::fabs(numeric - closed)));

    const double full = wigner_rate_numeric(sp, ray(kappa, 1, -1),
                                            {0.0, rp, 1.2, 0.0},
                                            GaugeChoice::chosen());
    const double pert = wigner_rate_perturbative(sp, ray(kappa, 1, -1), rp);
    log_rate_rem.push_back(std::log(std::fabs(full - pert)));
    log_eps.push_back(std::log(sp.epsilon()));
  }
  const num::LineFit phase_fit = num::fit_line(log_eps, log_phase_rem);
  const num::LineFit rate_fit = num::fit_line(log_eps, log_rate_rem);
  CHECK(phase_fit.slope == doctest::Approx(3.0).epsilon(0.07));
  CHECK(rate_fit.slope == doctest::Approx(3.0).epsilon(0.07));
}

TEST_CASE("reference gauge accumulates exactly zero angle") {
  GeodesicSegment seg{bh, ray(30.0, 1, -1), 10.0, 25.0, 1.2, 0.0};
  const PhaseResult got = wigner_phase_numeric(seg, GaugeChoice::zero());
  CHECK(got.phase == 0.0);
  CHECK(got.error_estimate == 0.0);

  // while the chosen gauge resolves a signal well above its error floor
  const PhaseResult sig = wigner_phase_numeric(seg, GaugeChoice::chosen());
  CHECK(std::fabs(sig.phase) > 10.0 * sig.error_estimate);
}

TEST_CASE("turning-point grazing segments stay finite in the zero gauge") {
  const double kmax = kappa_max(bh, 10.0, 25.0);
  GeodesicSegment seg{bh, ray(kmax * (1.0 - 1e-10), 1, -1), 10.0, 25.0, 1.2,
                      0.0};
  const PhaseResult got = wigner_phase_numeric(seg, GaugeChoice::zero());
  CHECK(got.phase == 0.0);
  CHECK(std::isfinite(got.error_estimate));
}

TEST_CASE("closed form rejects rays outside its validity window") {
  GeodesicSegment seg{bh, ray(120.0, 1, -1), 10.0, 25.0, 1.2, 0.0};
  CHECK_THROWS_AS(wigner_phase_closed(seg), DegenerateKappa);
  CHECK_THROWS_AS(
      wigner_rate_perturbative(bh, ray(120.0), 10.0), DegenerateKappa);
}

TEST_CASE("results never depend on the frequency scale") {
  NullConstants a = ray(30.0, 1, -1);
  NullConstants b = a;
  b.energy = 7.0;
  const Point p{0.0, 14.0, 1.2, 0.0};
  CHECK(wigner_rate_numeric(bh, a, p, GaugeChoice::chosen()) ==
        wigner_rate_numeric(bh, b, p, GaugeChoice::chosen()));
  GeodesicSegment sa{bh, a, 10.0, 25.0, 1.2, 0.0};
  GeodesicSegment sb{bh, b, 10.0, 25.0, 1.2, 0.0};
  CHECK(wigner_phase_numeric(sa, GaugeChoice::chosen()).phase ==
        wigner_phase_numeric(sb, GaugeChoice::chosen()).phase);
}

TEST_CASE("transported state rotates by the accumulated angle") {
  for (double kappa : {0.0, 1.0, 10.0, 50.0}) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {10.0, 25.0}, {25.0, 10.0}, {8.0, 40.0}}) {
      const int er = (b > a) ? 1 : -1;
      GeodesicSegment seg{bh, ray(kappa, er, -1), a, b, 1.2, 0.0};
      const PhaseResult quad = wigner_phase_numeric(seg, GaugeChoice::chosen());
      const PolarizationState out =
          transport_polarization(seg, PolarizationState{1.0, 0.0},
                                 GaugeChoice::chosen());
      const double angle = std::atan2(out.psi2, out.psi1);
      CHECK(std::fabs(angle - quad.phase) <= 1e-9);
      const double norm = out.psi1 * out.psi1 + out.psi2 * out.psi2;
      CHECK(std::fabs(norm - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("transport composes over split segments") {
  GeodesicSegment whole{bh, ray(30.0, 1, -1), 10.0, 25.0, 1.2, 0.0};
  GeodesicSegment first{bh, ray(30.0, 1, -1), 10.0, 17.0, 1.2, 0.0};
  GeodesicSegment second{bh, ray(30.0, 1, -1), 17.0, 25.0, 1.2, 0.0};
  const PolarizationState s0{0.6, -0.8};
  const PolarizationState direct =
      transport_polarization(whole, s0, GaugeChoice::chosen());
  const PolarizationState staged = transport_polarization(
      second, transport_polarization(first, s0, GaugeChoice::chosen()),
      GaugeChoice::chosen());
  CHECK(direct.psi1 == doctest::Approx(staged.psi1).epsilon(1e-11));
  CHECK(direct.psi2 == doctest::Approx(staged.psi2).epsilon(1e-11));
}

}  // TEST_SUITE
