#pragma once

#include <string>

#include "perp/mixing_law.hpp"

namespace perp {

// r with 1/r + 1/r* = 1
double conjugate_index(double r_star);

// Magnitude of the limit constant: r^{r*-1} for RegVar(r*), e for Gamma,
// 1 for RegVar1Convex. Predictions carry the minus sign.
double theorem_constant(const TailClass& tc);

struct TailPrediction {
  TailClass tail_class;
  double constant_C = 0.0;
  std::string normalizer;  // comparison function description
  bool has_point = false;
  double ln_predicted = 0.0;
  bool has_bracket = false;  // RapidNonGamma only
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Predicted ln P(R > x): -C f(x/q) for the limit-theorem cases,
// (x/q) ln p for an atom at 1, and the interval
// [-e^3 f(x/q), -e^{-1} f(x/q)] for the rapidly varying non-Gamma family.
TailPrediction predict_log_tail(const MixingLaw& law, double q, double x);

}  // namespace perp
