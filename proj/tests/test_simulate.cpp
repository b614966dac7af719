#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "perp/mixing_law.hpp"
#include "perp/rng.hpp"
#include "perp/simulate.hpp"

using perp::draw_perpetuity;
using perp::estimate_tail;
using perp::MixingLaw;
using perp::RngStream;
using perp::TailEstimate;

TEST_CASE("draw_perpetuity on degenerate factors") {
  MixingLaw zero = MixingLaw::degenerate(0.0);
  RngStream rng = RngStream::for_draw(1, 0, 0);
  perp::DrawResult d = draw_perpetuity(zero, 3.0, 1e-9, 100000, rng);
  CHECK(d.value == 3.0);
  CHECK(d.terms == 1);
  CHECK_FALSE(d.hit_max_terms);

  MixingLaw half = MixingLaw::degenerate(0.5);
  RngStream rng2 = RngStream::for_draw(1, 0, 1);
  perp::DrawResult d2 = draw_perpetuity(half, 1.0, 1e-12, 100000, rng2);
  CHECK(std::abs(d2.value - 2.0) < 1e-11);
  CHECK_FALSE(d2.hit_max_terms);

  MixingLaw one = MixingLaw::degenerate(1.0);
  RngStream rng3 = RngStream::for_draw(1, 0, 2);
  perp::DrawResult d3 = draw_perpetuity(one, 1.0, 1e-9, 50, rng3);
  CHECK(d3.hit_max_terms);
  CHECK(d3.terms == 50);
}

TEST_CASE("sample mean of the uniform perpetuity matches E R = q/(1-EM)") {
  // E M = 1/2, so E R = 2; var R is finite and modest.
  MixingLaw u = MixingLaw::power_uniform(1.0);
  const long long n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (long long i = 0; i < n; ++i) {
    RngStream rng = RngStream::for_draw(777, 0, static_cast<std::uint64_t>(i));
    double v = draw_perpetuity(u, 1.0, 1e-12, 100000, rng).value;
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double sd = std::sqrt((sumsq / n - mean * mean) / n);
  CHECK(std::abs(mean - 2.0) < 4.0 * sd + 1e-6);
}

TEST_CASE("estimate_tail determinism across worker counts") {
  MixingLaw u = MixingLaw::power_uniform(1.0);
  std::vector<double> xs{1.5, 2.0, 3.0};
  auto a = estimate_tail(u, 1.0, xs, 40000, 42, 1, 1e-9);
  auto b = estimate_tail(u, 1.0, xs, 40000, 42, 1, 1e-9);
  auto c = estimate_tail(u, 1.0, xs, 40000, 42, 4, 1e-9);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].hits == b[i].hits);
    CHECK(a[i].hits == c[i].hits);
    CHECK(a[i].p_hat == c[i].p_hat);
    CHECK(a[i].ci99_lo <= a[i].p_hat);
    CHECK(a[i].ci99_hi >= a[i].p_hat);
  }
}

TEST_CASE("tail estimate bounded below by the one-term truncation") {
  // R >= q(1 + M), so P(R > 1.5) >= P(M > 0.5) = 0.5 for uniform M.
  MixingLaw u = MixingLaw::power_uniform(1.0);
  auto est = estimate_tail(u, 1.0, {1.5}, 100000, 7, 2, 1e-9);
  REQUIRE(est.size() == 1);
  double se = std::sqrt(0.25 / 100000.0);
  CHECK(est[0].p_hat >= 0.5 - 4.0 * se);
}

TEST_CASE("zero hits reported with a flag, not -inf") {
  MixingLaw u = MixingLaw::power_uniform(1.0);
  auto est = estimate_tail(u, 1.0, {100.0}, 1000, 9, 1, 1e-9);
  REQUIRE(est.size() == 1);
  CHECK(est[0].hits == 0);
  CHECK_FALSE(est[0].ln_p_hat_valid);
  CHECK(est[0].ci99_hi > 0.0);
}

TEST_CASE("stochastic domination under shared substreams") {
  // alpha = 2 (density 2m) dominates alpha = 1 draw-by-draw when both are
  // sampled by inversion from the same uniforms.
  MixingLaw u1 = MixingLaw::power_uniform(1.0);
  MixingLaw u2 = MixingLaw::power_uniform(2.0);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    RngStream ra = RngStream::for_draw(5, 0, i);
    RngStream rb = RngStream::for_draw(5, 0, i);
    double va = draw_perpetuity(u1, 1.0, 1e-10, 100000, ra).value;
    double vb = draw_perpetuity(u2, 1.0, 1e-10, 100000, rb).value;
    CHECK(vb >= va - 1e-9);
  }
}

TEST_CASE("exact small-n oracle") {
  MixingLaw u = MixingLaw::power_uniform(1.0);
  CHECK(perp::exact_small_n_oracle(u, 1.0, 1, 1.5) ==
        doctest::Approx(0.5).epsilon(1e-7));
  CHECK(perp::exact_small_n_oracle(u, 1.0, 2, 2.25) ==
        doctest::Approx(0.1624954634428305).epsilon(1e-6));
  // x below q: certain event
  CHECK(perp::exact_small_n_oracle(u, 1.0, 1, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // degenerate factor: R_1* = q(1+m)
  MixingLaw half = MixingLaw::degenerate(0.5);
  CHECK(perp::exact_small_n_oracle(half, 1.0, 1, 1.4) == 1.0);
  CHECK(perp::exact_small_n_oracle(half, 1.0, 1, 1.6) == 0.0);
  CHECK_THROWS_AS(perp::exact_small_n_oracle(u, 1.0, 4, 2.0),
                  std::invalid_argument);
}

TEST_CASE("oracle lower-bounds the Monte Carlo interval") {
  MixingLaw w = MixingLaw::weibull_at_one(1.0, 2.0);
  double x = 2.2;
  double lo = perp::exact_small_n_oracle(w, 1.0, 2, x);
  auto est = estimate_tail(w, 1.0, {x}, 200000, 31, 2, 1e-9);
  REQUIRE(est.size() == 1);
  CHECK(lo <= est[0].ci99_hi);
}

TEST_CASE("wilson interval sanity") {
  double lo = 0.0, hi = 0.0;
  perp::wilson_ci99(0, 1000, lo, hi);
  CHECK(lo == 0.0);
  CHECK(hi > 0.0);
  CHECK(hi < 0.02);
  perp::wilson_ci99(500, 1000, lo, hi);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(hi - lo < 0.1);
}
