#include "perp/legendre.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "perp/quadrature.hpp"

namespace perp {

namespace {

// golden-section maximum of g on [lo, hi]; g assumed unimodal there
double golden_max(const std::function<double(double)>& g, double lo, double hi,
                  double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c), gd = g(d);
  // stop once the interval reaches tol or the spacing of doubles at this
  // magnitude, whichever is larger; a pure absolute tol never terminates
  // when the maximizer is large
  auto wide = [tol](double a_, double b_) {
    double floor_ =
        4.0 * std::numeric_limits<double>::epsilon() * std::abs(b_);
    return b_ - a_ > std::max(tol, floor_);
  };
  while (wide(a, b)) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ConjugateResult conjugate(const RealFn& f, double x, double z_max, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  auto g = [&](double z) { return z * x - f(z); };

  double hi = z_max;
  double zstar = 0.0;
  int expansions = 0;
  for (;;) {
    zstar = golden_max(g, 0.0, hi, tol);
    if (zstar < 0.99 * hi || expansions >= 64) break;
    hi *= 2.0;
    ++expansions;
  }

  ConjugateResult res;
  res.x = x;
  res.argmax_z = zstar;
  res.value = g(zstar);
  res.saturated = zstar >= 0.99 * hi;
  return res;
}

ChernoffBound chernoff_log_tail_bound(const RealFn& psi, double x,
                                      double z_max) {
  ConjugateResult c = conjugate(psi, x, z_max);
  return ChernoffBound{-c.value, c.saturated};
}

double evaluate_I_psi(const MixingLaw& law, const RealFn& psi, double z,
                      int quadrature_points) {
  if (!(z > 0.0)) throw std::domain_error("z must be positive");
  if (quadrature_points < 1000)
    throw std::invalid_argument("quadrature_points must be >= 1000");

  double psi_z = psi(z);
  double total = 0.0;

  double p0 = law.atom_at_zero_mass();
  if (p0 > 0.0) total += p0 * std::exp(z + psi(0.0) - psi_z);
  double p1 = law.atom_at_one_mass();
  if (p1 > 0.0) total += p1 * std::exp(z);

  if (law.family() == MixingLaw::Family::Degenerate) {
    return std::exp(z + psi(z * law.param_a()) - psi_z);
  }

  auto integrand = [&](double d) {
    double lw = law.ln_density(d);
    if (!std::isfinite(lw)) return 0.0;
    return std::exp(lw + z + psi(z * (1.0 - d)) - psi_z);
  };
  QuadResult q = integrate_near_zero(integrand, law.delta_cutoff(), 1e-6);
  if (!q.converged)
    throw std::runtime_error(
        "I_psi quadrature did not reach tolerance; achieved abs error " +
        std::to_string(q.abs_error));
  return total + q.value;
}

}  // namespace perp
