#pragma once

#include <cstdint>
#include <vector>

#include "perp/mixing_law.hpp"
#include "perp/rng.hpp"

namespace perp {

struct DrawResult {
  double value = 0.0;            // truncated series sum (lower approximation)
  double partial_product = 0.0;  // final running product; remainder = prod * R'
  int terms = 0;
  bool hit_max_terms = false;
};

// One draw of q * sum_j prod_{k<j} M_k, stopping when the running product
// drops below eps_trunc or max_terms is reached.
DrawResult draw_perpetuity(const MixingLaw& law, double q, double eps_trunc,
                           int max_terms, RngStream& rng);

struct TailEstimate {
  double x = 0.0;
  long long n_samples = 0;
  long long hits = 0;
  double p_hat = 0.0;
  double ci99_lo = 0.0;  // Wilson score interval
  double ci99_hi = 0.0;
  double ln_p_hat = 0.0;
  bool ln_p_hat_valid = false;  // false when hits == 0
  std::uint64_t seed = 0;
  int workers = 1;
  double eps_trunc = 0.0;
};

// Shared-sample Monte Carlo estimate of P(R > x) over a sorted x grid.
// Deterministic given (seed, n_samples, eps_trunc) for any worker count:
// every draw owns a counter-based substream keyed by its global index.
std::vector<TailEstimate> estimate_tail(const MixingLaw& law, double q,
                                        const std::vector<double>& xs,
                                        long long n_samples,
                                        std::uint64_t seed, int workers,
                                        double eps_trunc,
                                        int max_terms = 100000);

// Wilson 99% score interval for hits/n.
void wilson_ci99(long long hits, long long n, double& lo, double& hi);

// P(R_n* > x) for the (n+1)-term truncation R_n* = q sum_{j<=n+1} prod M_k,
// by nested adaptive quadrature (n <= 3). A rigorous lower bound on
// P(R > x) since R >= R_n* pathwise.
double exact_small_n_oracle(const MixingLaw& law, double q, int n, double x,
                            double tol = 1e-8);

}  // namespace perp
