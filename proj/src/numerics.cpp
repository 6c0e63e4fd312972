#include "wigner/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner::num {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod nodes on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-index nodes.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double resabs = 0.0;
  double aux = 0.0;
};

bool operator<(const Panel& p, const Panel& q) { return p.error < q.error; }

Panel gk15(const std::function<QuadSample(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const QuadSample fc = f(c);
  double res_k = wgk[7] * fc.value;
  double res_g = wg[3] * fc.value;
  double res_abs = wgk[7] * std::fabs(fc.value);
  double res_aux = wgk[7] * fc.aux;

  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const QuadSample lo = f(c - dx);
    const QuadSample hi = f(c + dx);
    const double sum = lo.value + hi.value;
    res_k += wgk[j] * sum;
    res_abs += wgk[j] * (std::fabs(lo.value) + std::fabs(hi.value));
    res_aux += wgk[j] * (lo.aux + hi.aux);
    if (j % 2 == 1) res_g += wg[j / 2] * sum;
  }

  Panel p;
  p.a = a;
  p.b = b;
  p.value = res_k * h;
  p.error = std::fabs((res_k - res_g) * h);
  p.resabs = res_abs * std::fabs(h);
  p.aux = res_aux * h;
  return p;
}

QuadResult run_adaptive(const std::function<QuadSample(double)>& f, double a,
                        double b, double abs_tol, double rel_tol) {
  QuadResult out;
  if (a == b) return out;
  if (!(a < b)) throw InvalidArgument("integrate_adaptive: requires a <= b");

  constexpr int max_panels = 4096;

  std::priority_queue<Panel> heap;
  heap.push(gk15(f, a, b));

  double value = heap.top().value;
  double error = heap.top().error;
  double resabs = heap.top().resabs;
  double aux = heap.top().aux;
  int panels = 1;

  while (error > std::max(abs_tol, rel_tol * std::fabs(value)) &&
         panels < max_panels) {
    Panel worst = heap.top();
    const double width = worst.b - worst.a;
    const double scale = std::max(std::fabs(worst.a), std::fabs(worst.b));
    if (width <= 8.0 * eps * scale) break;  // cannot refine further
    heap.pop();

    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);

    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    aux += left.aux + right.aux - worst.aux;

    heap.push(left);
    heap.push(right);
    ++panels;
  }

  out.value = value;
  out.error = std::max(error, 50.0 * eps * resabs);
  out.abs_integral = resabs;
  out.aux = aux;
  return out;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, double rel_tol) {
  return run_adaptive([&f](double x) { return QuadSample{f(x), 0.0}; }, a, b,
                      abs_tol, rel_tol);
}

QuadResult integrate_adaptive_aux(const std::function<QuadSample(double)>& f,
                                  double a, double b, double abs_tol,
                                  double rel_tol) {
  return run_adaptive(f, a, b, abs_tol, rel_tol);
}

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double x_rel_tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw InvalidArgument("brent_root: endpoints do not bracket a root");

  double c = a, fc = fa;
  double d = b - a, e = d;

  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }

    const double tol = 2.0 * eps * std::fabs(b) + 0.5 * x_rel_tol * std::fabs(b);
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return b;

    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      // Inverse quadratic interpolation, falling back to secant.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }

    a = b;
    fa = fb;
    b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if (fb == 0.0) return b;
  }
  return b;
}

State2 integrate_ode_rk45(
    const std::function<State2(double, const State2&)>& rhs, State2 y0,
    double x0, double x1, double rel_tol, double abs_tol) {
  if (x0 == x1) return y0;

  // Dormand-Prince 5(4) tableau.
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                   a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                   a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                   a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                   b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                   e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                   e4 = 125.0 / 192.0 - 393.0 / 640.0,
                   e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                   e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
  constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                   c5 = 8.0 / 9.0;

  const double dir = (x1 > x0) ? 1.0 : -1.0;
  const double span = std::fabs(x1 - x0);
  double x = x0;
  State2 y = y0;
  double h = dir * span / 64.0;
  const double h_min = span * 1e-14;

  for (int step = 0; step < 1000000; ++step) {
    if ((x - x1) * dir >= 0.0) return y;
    if (std::fabs(h) > std::fabs(x1 - x)) h = x1 - x;

    const State2 k1 = rhs(x, y);
    State2 t;
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * a21 * k1[i];
    const State2 k2 = rhs(x + c2 * h, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const State2 k3 = rhs(x + c3 * h, t);
    for (int i = 0; i < 2; ++i)
      t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State2 k4 = rhs(x + c4 * h, t);
    for (int i = 0; i < 2; ++i)
      t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State2 k5 = rhs(x + c5 * h, t);
    for (int i = 0; i < 2; ++i)
      t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                         a64 * k4[i] + a65 * k5[i]);
    const State2 k6 = rhs(x + h, t);

    State2 y_new;
    for (int i = 0; i < 2; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                             b5 * k5[i] + b6 * k6[i]);
    const State2 k7 = rhs(x + h, y_new);

    double err_norm = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double err_i = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double tol_i =
          abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
      err_norm += (err_i / tol_i) * (err_i / tol_i);
    }
    err_norm = std::sqrt(0.5 * err_norm);

    if (err_norm <= 1.0) {
      x += h;
      y = y_new;
    }
    const double grow =
        (err_norm > 0.0) ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    if (std::fabs(h) < h_min)
      throw Error("integrate_ode_rk45: step size underflow");
  }
  throw Error("integrate_ode_rk45: step budget exhausted");
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgument("fit_line: need matching arrays with >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidArgument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace wigner::num
