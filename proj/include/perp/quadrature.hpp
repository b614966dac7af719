#pragma once

#include <functional>

namespace perp {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // achieved error estimate
  bool converged = true;
};

// Adaptive Simpson on [a,b] to absolute tolerance tol.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double tol, int max_depth = 48);

// Integral of f over (0, hi] for integrands whose mass may concentrate
// near 0 at an unknown scale: geometric panels down from hi, each panel
// refined adaptively. rel_tol is relative to the final value.
QuadResult integrate_near_zero(const std::function<double(double)>& f,
                               double hi, double rel_tol);

}  // namespace perp
