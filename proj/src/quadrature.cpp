#include "crn/quadrature.hpp"

#include <cmath>

namespace crn::quad {

namespace {

double step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb, double whole,
            double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double h = (b - a) / 12.0;
  const double left = h * (fa + 4.0 * flm + fm);
  const double right = h * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol || !std::isfinite(diff)) return left + right + diff / 15.0;
  return step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_depth,
                        int panels) {
  if (a == b) return 0.0;
  double total = 0.0;
  const double w = (b - a) / panels;
  double x0 = a, f0 = f(a);
  for (int k = 0; k < panels; ++k) {
    const double x1 = k + 1 == panels ? b : a + (k + 1) * w;
    const double f1 = f(x1);
    const double fm = f(0.5 * (x0 + x1));
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += step(f, x0, x1, f0, fm, f1, whole, abs_tol / panels, max_depth);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

double integrate_graded(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  const double len = b - a;
  auto g = [&](double s) {
    const double jac = 6.0 * s * (1.0 - s);
    if (jac <= 0.0) return 0.0;
    return f(a + len * s * s * (3.0 - 2.0 * s)) * len * jac;
  };
  return adaptive_simpson(g, 0.0, 1.0, abs_tol);
}

}  // namespace crn::quad
