#include "perp/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace perp {

double conjugate_index(double r_star) {
  if (!(r_star > 1.0)) throw std::domain_error("r_star must exceed 1");
  return r_star / (r_star - 1.0);
}

double theorem_constant(const TailClass& tc) {
  switch (tc.kind) {
    case TailClass::Kind::RegVar: {
      double r = conjugate_index(tc.r_star);
      return std::pow(r, tc.r_star - 1.0);
    }
    case TailClass::Kind::Gamma:
      return std::exp(1.0);
    case TailClass::Kind::RegVar1Convex:
      return 1.0;
    case TailClass::Kind::AtomAtOne:
      throw std::invalid_argument(
          "atom-at-1 laws have no limit-theorem constant; use predict_log_tail");
    case TailClass::Kind::RapidNonGamma:
      throw std::invalid_argument(
          "rapidly varying non-Gamma laws admit a bracket only");
  }
  return 0.0;
}

TailPrediction predict_log_tail(const MixingLaw& law, double q, double x) {
  if (!(q > 0.0)) throw std::domain_error("q must be positive");
  if (!(x >= q)) throw std::domain_error("x must be >= q");

  TailPrediction pred;
  pred.tail_class = law.tail_class();
  double xs = x / q;

  switch (pred.tail_class.kind) {
    case TailClass::Kind::AtomAtOne:
      pred.normalizer = "x";
      pred.has_point = true;
      pred.ln_predicted = xs * std::log(pred.tail_class.p);
      break;
    case TailClass::Kind::RapidNonGamma: {
      pred.normalizer = "f(x/q)";
      double h = law.f_value(xs);
      pred.has_bracket = true;
      pred.bracket_lo = -std::exp(3.0) * h;
      pred.bracket_hi = -std::exp(-1.0) * h;
      break;
    }
    default:
      pred.normalizer = "f(x/q)";
      pred.constant_C = theorem_constant(pred.tail_class);
      pred.has_point = true;
      pred.ln_predicted = -pred.constant_C * law.f_value(xs);
      break;
  }
  return pred;
}

}  // namespace perp
