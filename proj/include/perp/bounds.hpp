#pragma once

#include <vector>

#include "perp/mixing_law.hpp"

namespace perp {

struct CertStrategy {
  enum class Kind { Auto, CaseI, CaseII };
  Kind kind = Kind::Auto;
  double a = 0.0;  // CaseI step parameter in (0,1); 0 means "default"

  static CertStrategy autopick() { return {}; }
  static CertStrategy case_i(double a = 0.0) {
    return {Kind::CaseI, a};
  }
  static CertStrategy case_ii() { return {Kind::CaseII, 0.0}; }
};

// Rigorous finite-x lower bound built from the event that every factor
// M_i exceeds 1 - delta_i along the recursion x_i = 1 + (1-delta_i) x_{i-1}:
// ln P(R > q x_n) >= sum_i ln P(M > 1 - delta_i).
struct PathCertificate {
  std::vector<double> xs;      // x_0 = 1, ..., x_n (normalized by q)
  std::vector<double> deltas;  // delta_1, ..., delta_n
  double ln_lower = 0.0;
  double target_x = 0.0;  // = x_n
  CertStrategy strategy;
};

PathCertificate path_certificate(const MixingLaw& law, double q,
                                 double target_x,
                                 CertStrategy strategy = CertStrategy());

struct Sandwich {
  double ln_lower = 0.0;
  double ln_upper = 0.0;
  // the inequality is guaranteed only for sufficiently large x; flagged
  // heuristically when x/q < 10
  bool asymptotic_caveat = false;
};

// 2 ln2 (x/q) ln P(M > 1 - q/(2x)) <= ln P(R>x) <= 4 (x/q) ln P(M > 1 - 2q/x),
// values reported verbatim (never clamped or reordered).
Sandwich hitczenko_sandwich(const MixingLaw& law, double q, double x);

// ceil(x/q) ln p: lower bound on ln P(R > x) from the all-ones path.
double atom_bounds(double p, double q, double x);

}  // namespace perp
