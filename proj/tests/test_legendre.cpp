#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "perp/legendre.hpp"
#include "perp/mixing_law.hpp"
#include "perp/rng.hpp"

using perp::conjugate;
using perp::MixingLaw;

TEST_CASE("conjugate against grid-search oracle values") {
  // frozen from a grid search over z in (0,10] at step 1e-5
  auto sq = [](double z) { return z * z; };
  auto r = conjugate(sq, 2.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.argmax_z == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(r.saturated);

  auto ex = [](double z) { return std::exp(z); };
  auto r2 = conjugate(ex, std::exp(2.0));
  CHECK(r2.value == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
  CHECK(r2.argmax_z == doctest::Approx(2.0).epsilon(1e-6));

  // linear f, x > 1: supremum is +inf, reported as saturated
  auto lin = [](double z) { return z; };
  CHECK(conjugate(lin, 2.0).saturated);

  CHECK_THROWS_AS(conjugate(sq, 1.0, 16.0, -1.0), std::invalid_argument);
}

TEST_CASE("chernoff bound") {
  auto psi = [](double z) { return 0.5 * z * z; };
  auto b = perp::chernoff_log_tail_bound(psi, 3.0);
  CHECK(b.bound == doctest::Approx(-4.5).epsilon(1e-8));
  CHECK_FALSE(b.saturated);
  auto b0 = perp::chernoff_log_tail_bound(psi, 0.0);
  CHECK(std::abs(b0.bound) < 1e-8);
}

TEST_CASE("biconjugation on convex functions") {
  std::vector<perp::RealFn> fns = {
      [](double z) { return z * z; },
      [](double z) { return std::exp(z); },
      [](double z) { return z * z * std::log1p(z); }};
  for (auto& f : fns) {
    auto fstar = [&f](double y) { return conjugate(f, y).value; };
    for (double x : {1.0, 5.0, 20.0}) {
      double fss = conjugate(fstar, x).value;
      CHECK(std::abs(fss - f(x)) / f(x) < 1e-6);
    }
  }
}

TEST_CASE("Young's inequality on random pairs") {
  auto f = [](double z) { return z * z; };
  perp::RngStream rng = perp::RngStream::for_draw(7, 0, 0);
  for (int i = 0; i < 2000; ++i) {
    double x = 10.0 * rng.next_unit();
    double z = 10.0 * rng.next_unit();
    double fstar = conjugate(f, x).value;
    CHECK(f(z) + fstar >= z * x - 1e-9);
  }
}

TEST_CASE("order reversal: f <= g implies f* >= g*") {
  auto f = [](double z) { return z * z; };
  auto g = [](double z) { return z * z + 0.5 * z; };
  for (double x : {0.5, 1.0, 3.0, 9.0})
    CHECK(conjugate(f, x).value >= conjugate(g, x).value - 1e-9);
}

TEST_CASE("conjugate of the scaled conjugate: (B f*(./B))* = B f**") {
  // for convex f this equals B f; checked against the closed form f=z^2
  auto f = [](double z) { return z * z; };
  for (double B : {1.5, 3.0}) {
    auto fB = [&f, B](double z) { return B * conjugate(f, z / B).value; };
    for (double x : {1.0, 2.0, 5.0}) {
      double lhs = conjugate(fB, x).value;
      CHECK(std::abs(lhs - B * x * x) / (B * x * x) < 1e-6);
    }
  }
}

TEST_CASE("superlinearity: f*(x)/x nondecreasing") {
  auto f = [](double z) { return std::exp(z); };
  double prev = -1e300;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    double ratio = conjugate(f, x).value / x;
    CHECK(ratio >= prev - 1e-9);
    prev = ratio;
  }
}

TEST_CASE("I_psi closed forms") {
  // M = 0 a.s.: I_psi(z) = e^{z + psi(0) - psi(z)}
  MixingLaw zero = MixingLaw::degenerate(0.0);
  auto sq = [](double z) { return z * z; };
  CHECK(perp::evaluate_I_psi(zero, sq, 2.0) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-10));

  // uniform M, psi = 2z: e^{-z}(e^{2z}-1)/(2z) at z=1
  MixingLaw u = MixingLaw::power_uniform(1.0);
  auto lin2 = [](double z) { return 2.0 * z; };
  CHECK(perp::evaluate_I_psi(u, lin2, 1.0) ==
        doctest::Approx(std::exp(-1.0) * (std::exp(2.0) - 1.0) / 2.0)
            .epsilon(1e-6));

  CHECK_THROWS_AS(perp::evaluate_I_psi(u, lin2, 1.0, 10),
                  std::invalid_argument);
}
