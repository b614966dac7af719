#include "perp/quadrature.hpp"

#include <cmath>
#include <vector>

namespace perp {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  (void)m;
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

void adapt(const std::function<double(double)>& f, double a, double fa,
           double b, double fb, double m, double fm, double whole, double tol,
           int depth, QuadResult& out) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) {
    out.value += left + right + err;
    out.abs_error += std::abs(err);
    if (depth <= 0 && std::abs(err) > tol) out.converged = false;
    return;
  }
  adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, out);
  adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double tol, int max_depth) {
  QuadResult out;
  if (a == b) return out;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(f, a, fa, b, fb, m, fm);
  adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth, out);
  return out;
}

QuadResult integrate_near_zero(const std::function<double(double)>& f,
                               double hi, double rel_tol) {
  // panel edges hi, hi/8, hi/64, ... down to ~1e-16*hi, then [0, lowest]
  std::vector<double> edges;
  double e = hi;
  while (e > 1e-16 * hi) {
    edges.push_back(e);
    e /= 8.0;
  }
  edges.push_back(0.0);

  // coarse pass to set per-panel absolute tolerances
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double b = edges[i], a = edges[i + 1], m = 0.5 * (a + b);
    rough += (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
  }
  double scale = std::abs(rough);
  if (!(scale > 0.0)) scale = 1e-300;
  double panel_tol = rel_tol * scale / static_cast<double>(edges.size());

  QuadResult out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    QuadResult p = adaptive_simpson(f, edges[i + 1], edges[i], panel_tol);
    out.value += p.value;
    out.abs_error += p.abs_error;
    out.converged = out.converged && p.converged;
  }
  return out;
}

}  // namespace perp
