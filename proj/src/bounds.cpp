#include "perp/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace perp {

namespace {

constexpr double kCaseIIFirstStep = 0.1;  // x_1 = 1 + eps

PathCertificate run_case_i(const MixingLaw& law, double target, double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("a must lie in (0,1)");
  PathCertificate cert;
  cert.strategy = CertStrategy::case_i(a);
  double x = 1.0;
  cert.xs.push_back(x);
  while (x < target) {
    double d = (1.0 - a) / x;
    double xn = 1.0 + (1.0 - d) * x;
    if (!(xn - x > 1e-12))
      throw std::runtime_error("certificate recursion stalled");
    cert.deltas.push_back(d);
    cert.ln_lower += law.ln_tail_at(d);
    x = xn;
    cert.xs.push_back(x);
  }
  cert.target_x = x;
  return cert;
}

PathCertificate run_case_ii(const MixingLaw& law, double target) {
  PathCertificate cert;
  cert.strategy = CertStrategy::case_ii();
  double x = 1.0;
  cert.xs.push_back(x);
  // first step to x_1 = 1 + eps
  double d1 = 1.0 - kCaseIIFirstStep;
  cert.deltas.push_back(d1);
  cert.ln_lower += law.ln_tail_at(d1);
  x = 1.0 + kCaseIIFirstStep;
  cert.xs.push_back(x);
  while (x < target) {
    double g = law.f_value(x) / law.f_derivative(x);
    double d = 1.0 / (x + g);
    double xn = 1.0 + (1.0 - d) * x;
    if (!(xn - x > 1e-12))
      throw std::runtime_error("certificate recursion stalled");
    cert.deltas.push_back(d);
    cert.ln_lower += law.ln_tail_at(d);
    x = xn;
    cert.xs.push_back(x);
  }
  cert.target_x = x;
  return cert;
}

// boundary optimum a -> 1 is unattainable; sweep and keep the best
PathCertificate run_sweep(const MixingLaw& law, double target) {
  const double sweep[] = {0.5, 0.9, 0.99};
  PathCertificate best;
  bool have = false;
  for (double a : sweep) {
    PathCertificate c = run_case_i(law, target, a);
    if (!have || c.ln_lower > best.ln_lower) {
      best = std::move(c);
      have = true;
    }
  }
  return best;
}

}  // namespace

PathCertificate path_certificate(const MixingLaw& law, double q,
                                 double target_x, CertStrategy strategy) {
  if (!(q > 0.0)) throw std::domain_error("q must be positive");
  double target = target_x / q;
  if (!(target > 1.0)) throw std::domain_error("target_x/q must exceed 1");

  if (strategy.kind == CertStrategy::Kind::Auto) {
    TailClass tc = law.tail_class();
    switch (tc.kind) {
      case TailClass::Kind::RegVar:
        return run_case_i(law, target, 1.0 / tc.r_star);
      case TailClass::Kind::Gamma:
      case TailClass::Kind::RapidNonGamma:
        return run_case_ii(law, target);
      case TailClass::Kind::RegVar1Convex:
      case TailClass::Kind::AtomAtOne:
        return run_sweep(law, target);
    }
  }
  if (strategy.kind == CertStrategy::Kind::CaseII)
    return run_case_ii(law, target);
  double a = strategy.a;
  if (a == 0.0) {
    TailClass tc = law.tail_class();
    a = tc.kind == TailClass::Kind::RegVar ? 1.0 / tc.r_star : 0.5;
  }
  return run_case_i(law, target, a);
}

Sandwich hitczenko_sandwich(const MixingLaw& law, double q, double x) {
  if (!(q > 0.0)) throw std::domain_error("q must be positive");
  if (!(x > 2.0 * q)) throw std::domain_error("x must exceed 2q");
  Sandwich s;
  double xs = x / q;
  s.ln_lower = 2.0 * std::log(2.0) * xs * law.ln_tail_at(0.5 / xs);
  s.ln_upper = 4.0 * xs * law.ln_tail_at(2.0 / xs);
  s.asymptotic_caveat = xs < 10.0;
  return s;
}

double atom_bounds(double p, double q, double x) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("p must lie in (0,1)");
  if (!(q > 0.0)) throw std::domain_error("q must be positive");
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  return std::ceil(x / q) * std::log(p);
}

}  // namespace perp
