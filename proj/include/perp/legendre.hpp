#pragma once

#include <functional>

#include "perp/mixing_law.hpp"
#include "perp/regvar.hpp"

namespace perp {

struct ConjugateResult {
  double x = 0.0;
  double value = 0.0;     // f*(x)
  double argmax_z = 0.0;  // maximizer of z x - f(z)
  bool saturated = false;  // supremum still edge-bound after expansion
};

// Convex conjugate f*(x) = sup{z x - f(z) : z > 0} by golden-section
// search on (0, z_max], doubling z_max (up to 64 times) while the
// maximizer sits at the right edge.
ConjugateResult conjugate(const RealFn& f, double x, double z_max = 16.0,
                          double tol = 1e-10);

struct ChernoffBound {
  double bound = 0.0;  // upper bound on ln P(X > x)
  bool saturated = false;
};

// ln P(X > x) <= -psi*(x) whenever E e^{zX} <= e^{psi(z)} for z > 0.
// The envelope property is the caller's responsibility.
ChernoffBound chernoff_log_tail_bound(const RealFn& psi, double x,
                                      double z_max = 16.0);

// I_psi(z) = e^z E e^{psi(zM) - psi(z)}: atoms handled exactly, the
// continuous part integrated adaptively in delta = 1 - m. Relative
// accuracy target 1e-6; throws on quadrature non-convergence with the
// achieved error estimate in the message.
double evaluate_I_psi(const MixingLaw& law, const RealFn& psi, double z,
                      int quadrature_points = 2000);

}  // namespace perp
