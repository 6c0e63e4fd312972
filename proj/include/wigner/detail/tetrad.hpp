#pragma once

#include <cmath>
#include <limits>

#include "wigner/errors.hpp"
#include "wigner/frames.hpp"
#include "wigner/numerics.hpp"

// Scalar-generic tetrad leg formulas, instantiated with double for direct
// evaluation and with num::Dual for the coordinate derivatives entering the
// frame connection. The constant-phi specializations keep square roots of
// ray constants (kappa, 2 M kappa) out of the generic sqrt so the dual
// derivative stays finite when those constants vanish.

namespace wigner::detail {

using num::Dual;
using num::value_of;

using num::cos;
using num::sin;
using num::sqrt;
using std::cos;
using std::sin;
using std::sqrt;

// sqrt with a hard zero at nonpositive arguments. Reserved for radicands
// that can vanish identically along a ray (angular potential, gauge
// admissibility); there the factor always multiplies another zero, so
// dropping the derivative is exact.
inline double sqrt0(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }
inline Dual sqrt0(Dual x) {
  if (x.v > 0.0) {
    const double s = std::sqrt(x.v);
    return {s, x.d / (2.0 * s)};
  }
  return {0.0, 0.0};
}

// Coordinate components (t, r, theta, phi) of the two transverse legs.
template <typename T>
struct LegPair {
  T e1[4];
  T e2[4];
};

// Transverse legs for arbitrary l_phi and gauge function B. The caller
// screens the radicands; the denominator Q vanishes at a radial turning
// point when l_phi = 0, where this parametrization is singular.
template <typename T>
LegPair<T> legs_general(double M, double kappa, double l, double eps_r,
                        double eps_th, double eta1, double eta2, T r, T th,
                        T B) {
  const T s = sin(th);
  const T c = cos(th);
  const double kt = kappa + l * l;
  const T r2 = r * r;
  const T rm = r - 2.0 * M;
  const T P = r2 * r - rm * kt;
  const T Q = P * s * s + (l * l) * rm;

  // W and S vanish identically for rays or gauges that saturate their
  // bounds (radial rays, polar turning points, the inverse-radius gauge).
  // Both are differences of quantities that agree analytically there, so
  // the leftover is rounding noise that the square root would amplify.
  // Flush anything inside the noise band to an exact zero, derivative
  // included.
  constexpr double band = 16.0 * std::numeric_limits<double>::epsilon();
  const T w_pos = kappa + T{};
  const T w_neg = (l * l) * c * c / (s * s);
  T W{};
  if (std::fabs(value_of(w_pos) - value_of(w_neg)) >
      band * (std::fabs(value_of(w_pos)) + std::fabs(value_of(w_neg))))
    W = w_pos - w_neg;
  const T s_pos = Q;
  const T s_neg = r2 * r2 * r * B * B * s * s;
  T S{};
  if (std::fabs(value_of(s_pos) - value_of(s_neg)) >
      band * (std::fabs(value_of(s_pos)) + std::fabs(value_of(s_neg))))
    S = s_pos - s_neg;

  const T sqP = sqrt(P);
  const T sqW = sqrt0(W);
  const T sqS = sqrt0(S);
  const T r52 = r2 * sqrt(r);
  LegPair<T> out{};
  out.e1[1] = -(eta1 * eps_r) * rm * s *
              (r2 * r2 * (l * B) - (eta2 * eps_th) * sqP * sqW * sqS) /
              (r2 * Q);
  out.e1[2] = -(eta1 * eta2) * sqS / (r52 * s);
  out.e1[3] = eta1 *
              (r2 * r2 * B * (s * s) * sqP +
               (eta2 * eps_th * l) * rm * sqW * sqS) /
              (r52 * s * Q);
  out.e2[1] = -eps_r * rm *
              (eps_th * r * B * (s * s) * sqP * sqW + (eta2 * l) * sqS) /
              (sqrt(r) * Q);
  out.e2[2] = B;
  out.e2[3] = (-(eps_th * l) * r * B * rm * sqW + eta2 * sqP * sqS) / (r * Q);
  return out;
}

// Constant-phi legs in the gauge B = (1/r) sqrt(1 - kappa/r^2). Defined for
// r^2 >= kappa, where the turning-point denominator D stays positive.
template <typename T>
LegPair<T> legs_chosen_constphi(double M, double kappa, double eps_r,
                                double eps_th, double eta1, double eta2, T r,
                                T th) {
  const T s = sin(th);
  const T r2 = r * r;
  const T f = 1.0 - 2.0 * M / r;
  const T sqD = sqrt(1.0 - f * kappa / r2);
  const T squ = sqrt(1.0 - kappa / r2);
  const T r52 = r2 * sqrt(r);
  const double sq2Mk = std::sqrt(2.0 * M * kappa);
  const double sqk = std::sqrt(kappa);
  const double sq2M = std::sqrt(2.0 * M);
  LegPair<T> out{};
  out.e1[1] = (eta1 * eta2 * eps_r * eps_th * kappa * sq2M) * f / (r52 * sqD);
  out.e1[2] = -(eta1 * eta2 * sq2Mk) / r52;
  out.e1[3] = eta1 * squ / (r * s * sqD);
  out.e2[1] = -(eps_r * eps_th * sqk) * f * squ / (r * sqD);
  out.e2[2] = squ / r;
  out.e2[3] = (eta2 * sq2Mk) / (r52 * s * sqD);
  return out;
}

// Constant-phi legs in the B = 0 gauge; regular down to the turning point.
template <typename T>
LegPair<T> legs_zero_constphi(double M, double kappa, double eps_r,
                              double eps_th, double eta1, double eta2, T r,
                              T th) {
  const T s = sin(th);
  const T r2 = r * r;
  const T rm = r - 2.0 * M;
  const T P = r2 * r - rm * kappa;
  const double sqk = std::sqrt(kappa);
  LegPair<T> out{};
  out.e1[1] = (eta1 * eta2 * eps_r * eps_th * sqk) * rm / r2;
  out.e1[2] = -(eta1 * eta2) * sqrt(P) / (r2 * sqrt(r));
  out.e2[3] = eta2 / (r * s);
  return out;
}

// B = +-1/r on its admissible rays (kappa = 0): the unit phi and theta
// directions, scaled by sigma = r B. eta2 drops out of the reduction.
template <typename T>
LegPair<T> legs_invr_radial(double sigma, double eta1, T r, T th) {
  const T s = sin(th);
  LegPair<T> out{};
  out.e1[3] = (eta1 * sigma) / (r * s);
  out.e2[2] = sigma / r;
  return out;
}

inline double gauge_b_custom(const GaugeChoice& g, double r) {
  return g.custom_b(r);
}
inline Dual gauge_b_custom(const GaugeChoice& g, Dual r) {
  return {g.custom_b(r.v), g.custom_db_dr(r.v) * r.d};
}

// All four legs of the adapted tetrad on a constant-phi ray. Rows are legs
// 0..3, columns coordinates t, r, theta, phi.
template <typename T>
struct TetradComponents {
  T e[4][4];
};

template <typename T>
TetradComponents<T> tetrad_constphi(const SpacetimeParams& sp,
                                    const NullConstants& c,
                                    const GaugeChoice& g, T r, T th) {
  if (c.l_phi != 0.0)
    throw InvalidArgument("constant-phi tetrad requires l_phi == 0");
  if (g.eta1 * g.eta1 != 1 || g.eta2 * g.eta2 != 1)
    throw InvalidArgument("gauge orientation signs must be +-1");
  const double M = sp.mass;
  const double rv = value_of(r);
  const double fv = sp.f(rv);
  if (fv * c.kappa / (rv * rv) > 1.0)
    throw ForbiddenRegion("ray does not reach this radius");
  const double h1 = g.eta1;
  const double h2 = g.eta2;
  const double er = c.eps_r;
  const double et = c.eps_theta;

  LegPair<T> legs;
  switch (g.kind) {
    case GaugeKind::chosen:
      if (c.kappa > rv * rv)
        throw GaugeDomainViolation(
            "chosen gauge undefined below r = sqrt(kappa)");
      legs = legs_chosen_constphi<T>(M, c.kappa, er, et, h1, h2, r, th);
      break;
    case GaugeKind::zero:
      legs = legs_zero_constphi<T>(M, c.kappa, er, et, h1, h2, r, th);
      break;
    case GaugeKind::plus_inv_r:
    case GaugeKind::minus_inv_r: {
      if (c.kappa != 0.0)
        throw GaugeDomainViolation(
            "B = +-1/r admits only purely radial rays (kappa = 0)");
      const double sigma = (g.kind == GaugeKind::plus_inv_r) ? 1.0 : -1.0;
      legs = legs_invr_radial<T>(sigma, h1, r, th);
      break;
    }
    case GaugeKind::custom: {
      if (!g.custom_b || !g.custom_db_dr)
        throw InvalidArgument("custom gauge requires B and dB/dr");
      const T B = gauge_b_custom(g, r);
      const double Pv = rv * rv * rv - (rv - 2.0 * M) * c.kappa;
      if (Pv <= 0.0)
        throw TurningPointInside(
            "general gauge parametrization is singular at the turning point");
      const double Bv = value_of(B);
      const double r5B2 = rv * rv * rv * rv * rv * Bv * Bv;
      if (Pv - r5B2 < -1e-12 * (Pv + r5B2))
        throw GaugeDomainViolation("gauge function exceeds the ray bound");
      legs = legs_general<T>(M, c.kappa, 0.0, er, et, h1, h2, r, th, B);
      break;
    }
    default:
      throw Unreachable("unhandled gauge kind");
  }

  const T f = 1.0 - 2.0 * M / r;
  const T sqf = sqrt(f);
  const T D = 1.0 - f * c.kappa / (r * r);
  TetradComponents<T> out{};
  out.e[0][0] = 1.0 / sqf;
  for (int i = 0; i < 4; ++i) {
    out.e[1][i] = legs.e1[i];
    out.e[2][i] = legs.e2[i];
  }
  out.e[3][1] = er * sqf * sqrt(D);
  out.e[3][2] = (et * std::sqrt(c.kappa)) * sqf / (r * r);
  return out;
}

}  // namespace wigner::detail
