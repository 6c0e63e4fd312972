#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "wigner/errors.hpp"
#include "wigner/geodesics.hpp"

using namespace wigner;

namespace {

const SpacetimeParams earth{4.435e-3, 6.371e6};
constexpr double r_lab = 6.371e6;
constexpr double r_sat = 4.216e7;

double null_norm(const SpacetimeParams& sp, const Point& p,
                 const FourVector& k) {
  return dot(sp, p, k, k);
}

}  // namespace

TEST_SUITE("geodesics") {

TEST_CASE("tangent vectors are null across random admissible draws") {
  std::mt19937_64 rng(20240811u);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double r = r_lab * std::exp(uni(rng) * std::log(10.0));
    const double theta = 0.3 + uni(rng) * (std::numbers::pi - 0.6);
    const double kappa_tot =
        uni(rng) * 0.95 * r * r / earth.f(r);
    const double s = std::sin(theta);
    const double l2 = uni(rng) * kappa_tot * s * s * 0.98;
    NullConstants c;
    c.energy = (i % 3 == 0) ? 0.3 : (i % 3 == 1) ? 1.0 : 7.0;
    c.l_phi = ((i % 2) ? 1.0 : -1.0) * std::sqrt(l2);
    c.kappa = kappa_tot - l2;
    c.eps_r = (i % 5 < 2) ? -1 : 1;
    c.eps_theta = (i % 7 < 3) ? -1 : 1;
    const Point p{0.0, r, theta, 0.0};
    const FourVector k = null_vector_general(earth, c, p);
    CHECK(std::fabs(null_norm(earth, p, k)) <= 1e-12 * c.energy * c.energy);
  }
}

TEST_CASE("zero angular momentum reduces to the meridian form") {
  NullConstants c;
  c.energy = 2.0;
  c.kappa = 1e12;
  c.eps_r = -1;
  c.eps_theta = 1;
  const Point p{0.0, 2.0 * r_lab, 1.2, 0.4};
  const FourVector a = null_vector_general(earth, c, p);
  const FourVector b = null_vector_constphi(earth, c, p);
  CHECK(a.t == b.t);
  CHECK(a.r == b.r);
  CHECK(a.theta == b.theta);
  CHECK(a.phi == b.phi);
  CHECK(a.phi == 0.0);
}

TEST_CASE("purely radial tangent has no angular components") {
  NullConstants c;
  c.energy = 3.0;
  const Point p{0.0, r_lab, 0.8, 0.0};
  const FourVector k = null_vector_constphi(earth, c, p);
  CHECK(k.theta == 0.0);
  CHECK(k.phi == 0.0);
  CHECK(std::fabs(null_norm(earth, p, k)) <= 1e-15 * c.energy * c.energy);
}

TEST_CASE("impact parameter beyond the local bound is rejected") {
  NullConstants c;
  c.kappa = 1.01 * r_lab * r_lab / earth.f(r_lab);
  const Point p{0.0, r_lab, 1.0, 0.0};
  CHECK_THROWS_AS(null_vector_constphi(earth, c, p), ForbiddenRegion);
}

TEST_CASE("polar overshoot of the angular potential is rejected") {
  NullConstants c;
  c.kappa = 1.0;
  c.l_phi = 100.0;
  const Point p{0.0, r_lab, 0.5, 0.0};
  CHECK_THROWS_AS(null_vector_general(earth, c, p), ForbiddenRegion);
}

TEST_CASE("kappa bound comes from the lower endpoint") {
  const double expect = r_lab * r_lab / earth.f(r_lab);
  CHECK(kappa_max(earth, r_lab, r_sat) == expect);
  CHECK(kappa_max(earth, r_sat, r_lab) == expect);
}

TEST_CASE("flat-space polar sweep matches the closed form") {
  const SpacetimeParams flat{0.0, r_lab};
  for (double kappa : {1e9, 1e12, r_lab * r_lab * (1.0 - 1e-10)}) {
    const double got = delta_theta_of_kappa(flat, r_lab, r_sat, kappa);
    const double expect = std::asin(std::sqrt(kappa) / r_lab) -
                          std::asin(std::sqrt(kappa) / r_sat);
    CHECK(got == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("mass correction to the polar sweep is resolved") {
  // Frozen reference: kappa = 1e12 between the Earth-like radii. The mass
  // term shifts the sweep by ~7e-13 rad, well above the quadrature error.
  const double curved = delta_theta_of_kappa(earth, r_lab, r_sat, 1e12);
  CHECK(curved == doctest::Approx(0.1338915972552108145).epsilon(1e-12));
  const SpacetimeParams flat{0.0, r_lab};
  const double diff = delta_theta_of_kappa(flat, r_lab, r_sat, 1e12) - curved;
  CHECK(diff > 6.5e-13);
  CHECK(diff < 7.3e-13);
}

TEST_CASE("polar sweep grows with kappa and vanishes with it") {
  CHECK(delta_theta_of_kappa(earth, r_lab, r_sat, 0.0) == 0.0);
  CHECK(delta_theta_of_kappa(earth, r_sat, r_sat, 1e10) == 0.0);
  double prev = 0.0;
  const double kmax = kappa_max(earth, r_lab, r_sat);
  for (double frac : {1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999}) {
    const double cur = delta_theta_of_kappa(earth, r_lab, r_sat, frac * kmax);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("sweep stays finite at a grazing turning point") {
  const double kmax = kappa_max(earth, r_lab, r_sat);
  const double grazing =
      delta_theta_of_kappa(earth, r_lab, r_sat, kmax * (1.0 - 1e-13));
  CHECK(grazing > 0.0);
  CHECK(grazing < std::numbers::pi / 2);
  CHECK_THROWS_AS(
      delta_theta_of_kappa(earth, r_lab, r_sat, kmax * (1.0 + 1e-9)),
      TurningPointInside);
}

TEST_CASE("kappa solve round-trips the requested sweep") {
  for (double target : {1e-6, 1e-3, 0.05, 0.12}) {
    const double kappa = solve_kappa(earth, r_lab, r_sat, target);
    const double back = delta_theta_of_kappa(earth, r_lab, r_sat, kappa);
    CHECK(std::fabs(back - target) <= 1e-12 * std::max(target, 1e-9));
  }
  CHECK(solve_kappa(earth, r_lab, r_sat, 0.0) == 0.0);
}

TEST_CASE("kappa solve reproduces the frozen reference value") {
  const double kappa = solve_kappa(earth, r_lab, r_sat, 0.01);
  CHECK(kappa == doctest::Approx(5632402770.419750936).epsilon(1e-11));
}

TEST_CASE("kappa solve rejects unreachable and degenerate targets") {
  const double kmax = kappa_max(earth, r_lab, r_sat);
  const double sweep_max =
      delta_theta_of_kappa(earth, r_lab, r_sat, kmax * (1.0 - 1e-12));
  CHECK_THROWS_AS(solve_kappa(earth, r_lab, r_sat, sweep_max * 1.01),
                  Unreachable);
  CHECK_NOTHROW(solve_kappa(earth, r_lab, r_sat, sweep_max * 0.99));
  CHECK_THROWS_AS(solve_kappa(earth, r_lab, r_lab, 0.01), DegenerateRadii);
  CHECK_THROWS_AS(solve_kappa(earth, r_lab, r_sat, -0.01), InvalidArgument);
}

TEST_CASE("small-angle closure against the exact solve") {
  const double approx = kappa_small_angle(r_lab, r_sat, 0.01);
  CHECK(approx == doctest::Approx(5632708638.268714467).epsilon(1e-14));
  const double exact = solve_kappa(earth, r_lab, r_sat, 0.01);
  CHECK(std::fabs(approx - exact) / exact < 1e-4);

  // The closure error shrinks quadratically with the sweep.
  const double tiny = 1e-5;
  const double approx2 = kappa_small_angle(r_lab, r_sat, tiny);
  const double exact2 = solve_kappa(earth, r_lab, r_sat, tiny);
  CHECK(std::fabs(approx2 - exact2) / exact2 < 1e-9);
}

TEST_CASE("segment sampling reproduces the endpoint sweep") {
  NullConstants c;
  c.kappa = 5e9;
  c.eps_r = 1;
  c.eps_theta = -1;
  const GeodesicSegment seg{earth, c, r_lab, r_sat, 1.4, 0.0};
  const auto pts = sample_segment(seg, 33);
  REQUIRE(pts.size() == 33);
  CHECK(pts.front().r == r_lab);
  CHECK(pts.back().r == r_sat);
  CHECK(pts.front().theta == 1.4);
  const double sweep = delta_theta_of_kappa(earth, r_lab, r_sat, 5e9);
  CHECK(pts.back().theta == doctest::Approx(1.4 - sweep).epsilon(1e-13));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].r > pts[i - 1].r);
    CHECK(pts[i].theta < pts[i - 1].theta);
  }

  const auto fine = sample_segment(seg, 1025);
  CHECK(fine.back().theta == doctest::Approx(pts.back().theta).epsilon(1e-13));
}

TEST_CASE("sampling is independent of the frequency scale") {
  NullConstants ca;
  ca.energy = 1.0;
  ca.kappa = 5e9;
  const GeodesicSegment a{earth, ca, r_lab, r_sat, 1.4, 0.0};
  GeodesicSegment b = a;
  b.consts.energy = 7.0;
  const auto pa = sample_segment(a, 17);
  const auto pb = sample_segment(b, 17);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].r == pb[i].r);
    CHECK(pa[i].theta == pb[i].theta);
  }
}

TEST_CASE("zero-length connector samples to identical points") {
  NullConstants c;
  c.kappa = 3e9;
  const GeodesicSegment seg{earth, c, r_lab, r_lab, 0.9, 0.0};
  const auto pts = sample_segment(seg, 5);
  REQUIRE(pts.size() == 5);
  for (const auto& p : pts) {
    CHECK(p.r == r_lab);
    CHECK(p.theta == 0.9);
  }
}

}  // TEST_SUITE
