#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>

namespace wigner::num {

// Library-wide default tolerances.
inline constexpr double quad_abs_tol = 1e-14;   // adaptive quadrature, absolute
inline constexpr double quad_rel_tol = 1e-12;   // adaptive quadrature, relative
inline constexpr double ode_rel_tol = 1e-12;    // polarization ODE, relative
inline constexpr double ode_abs_tol = 1e-14;    // polarization ODE, absolute
inline constexpr double root_rel_tol = 1e-12;   // bracketed root solve, relative in x

// Forward-mode derivative scalar: carries a value and one derivative slot.
// Seed d = 1 on the variable being differentiated, d = 0 on constants.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
inline Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
inline Dual operator-(Dual a, double b) { return {a.v - b, a.d}; }
inline Dual operator-(double a, Dual b) { return {a - b.v, -b.d}; }
inline Dual operator*(Dual a, double b) { return {a.v * b, a.d * b}; }
inline Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
inline Dual operator/(Dual a, double b) { return {a.v / b, a.d / b}; }
inline Dual operator/(double a, Dual b) { return {a / b.v, -a * b.d / (b.v * b.v)}; }

inline Dual sqrt(Dual a) {
  double s = std::sqrt(a.v);
  return {s, s > 0.0 ? a.d / (2.0 * s) : 0.0};
}
inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual pow(Dual a, double p) {
  return {std::pow(a.v, p), p * std::pow(a.v, p - 1.0) * a.d};
}

// Plain-double shims so generic code compiles with either scalar type.
inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

// Integrand sample with a side channel. The aux component is integrated with
// the same panels as the value but never drives adaptivity; the transport
// layer uses it to carry a rounding-error scale along with the integrand.
struct QuadSample {
  double value = 0.0;
  double aux = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;         // estimated absolute error of value
  double abs_integral = 0.0;  // integral of |f|
  double aux = 0.0;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b] (a <= b). Splits the worst panel
// until the summed error estimate meets max(abs_tol, rel_tol*|value|) or the
// panel budget runs out; the achieved error is reported either way. The
// error field carries a floor of 50*eps*abs_integral so that integrals of
// pure rounding noise report an honest uncertainty.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol = quad_abs_tol,
                              double rel_tol = quad_rel_tol);

QuadResult integrate_adaptive_aux(const std::function<QuadSample(double)>& f,
                                  double a, double b,
                                  double abs_tol = quad_abs_tol,
                                  double rel_tol = quad_rel_tol);

// Brent root bracket solve on [lo, hi]; f(lo) and f(hi) must differ in sign.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double x_rel_tol = root_rel_tol, int max_iter = 200);

// Adaptive embedded Dormand-Prince 5(4) pair for a two-component state.
using State2 = std::array<double, 2>;
State2 integrate_ode_rk45(
    const std::function<State2(double, const State2&)>& rhs, State2 y0,
    double x0, double x1, double rel_tol = ode_rel_tol,
    double abs_tol = ode_abs_tol);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope*x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace wigner::num
