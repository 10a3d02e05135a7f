#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace aw {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  const double scale = std::max({std::abs(whole), std::abs(b - a) * std::abs(fm), 1e-300});
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, max_depth);
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
  if (a == b) return 0.0;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  const double tmax = 6.8;  // weights below ~1e-300 beyond this
  auto eval = [&](double t) -> double {
    const double u = M_PI_2 * std::sinh(t);
    const double x = mid + half * std::tanh(u);
    if (x <= a || x >= b) return 0.0;  // abscissa collapsed onto an endpoint
    const double ch = std::cosh(u);
    const double w = half * M_PI_2 * std::cosh(t) / (ch * ch);
    const double y = f(x);
    return std::isfinite(y) ? w * y : 0.0;
  };
  double h = 1.0;
  double sum = eval(0.0);
  for (double t = h; t <= tmax; t += h) sum += eval(t) + eval(-t);
  double integral = h * sum;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    double extra = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) extra += eval(t) + eval(-t);
    const double refined = 0.5 * integral + h * extra;
    const double change = std::abs(refined - integral);
    integral = refined;
    if (level >= 2 && change <= rel_tol * std::max(std::abs(integral), 1e-300)) break;
  }
  return integral;
}

}  // namespace aw
