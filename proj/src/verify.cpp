#include "perp/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "perp/asymptotics.hpp"
#include "perp/bounds.hpp"
#include "perp/legendre.hpp"
#include "perp/mixing_law.hpp"
#include "perp/regvar.hpp"
#include "perp/simulate.hpp"

namespace perp {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    if (ok) {
      ++result_.passed;
    } else {
      ++result_.failed;
      result_.failures.push_back(what);
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::vector<MixingLaw> catalog() {
  return {MixingLaw::power_uniform(1.0),
          MixingLaw::weibull_at_one(1.0, 2.0),
          MixingLaw::log_power(1.0, 2.0),
          MixingLaw::gamma_exp(),
          MixingLaw::rapid_non_gamma(),
          MixingLaw::atom_at_one(0.5, MixingLaw::power_uniform(1.0))};
}

SuiteResult verify_tail_monotone() {
  Suite s("tail_models/monotone_tail");
  for (const MixingLaw& law : catalog()) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 8; k >= 1; --k) {
      double d = std::pow(10.0, -k);
      double lt = law.ln_tail_at(d);
      s.check(lt <= 0.0, law.name() + ": ln_tail_at > 0 at delta=1e-" +
                             std::to_string(k));
      // the exponential families exceed double range below delta ~ 1/709,
      // where -inf is the honest value
      bool rapid = law.family() == MixingLaw::Family::GammaExp ||
                   law.family() == MixingLaw::Family::RapidNonGamma;
      if (!rapid || 1.0 / d < 700.0)
        s.check(std::isfinite(lt),
                law.name() + ": ln_tail_at not finite at delta=1e-" +
                    std::to_string(k));
      s.check(lt >= prev, law.name() + ": ln_tail_at decreasing at delta=1e-" +
                              std::to_string(k));
      prev = lt;
    }
  }
  return s.take();
}

SuiteResult verify_f_consistency() {
  Suite s("tail_models/f_derivative");
  for (const MixingLaw& law : catalog()) {
    for (double x : {2.0, 10.0, 50.0, 200.0}) {
      double h = 1e-5 * x;
      // 5-point central difference; the 3-point truncation term alone
      // exceeds the tolerance for the fastest-growing family
      double fd = (law.f_value(x - 2 * h) - 8.0 * law.f_value(x - h) +
                   8.0 * law.f_value(x + h) - law.f_value(x + 2 * h)) /
                  (12.0 * h);
      double fp = law.f_derivative(x);
      std::ostringstream os;
      os << law.name() << ": f' mismatch at x=" << x;
      s.check(std::abs(fp - fd) / std::abs(fp) < 1e-6, os.str());
    }
  }
  return s.take();
}

SuiteResult verify_sampler(long long n) {
  Suite s("tail_models/sampler_agreement");
  const double deltas[] = {0.5, 0.1, 0.02};
  int law_idx = 0;
  for (const MixingLaw& law : catalog()) {
    long long hits[3] = {0, 0, 0};
    for (long long i = 0; i < n; ++i) {
      RngStream rng = RngStream::for_draw(777, law_idx, i);
      double m = law.sample(rng);
      for (int k = 0; k < 3; ++k)
        if (m > 1.0 - deltas[k]) ++hits[k];
    }
    for (int k = 0; k < 3; ++k) {
      double p = std::exp(law.ln_tail_at(deltas[k]));
      double sigma = std::sqrt(p * (1.0 - p) / n);
      double phat = static_cast<double>(hits[k]) / n;
      std::ostringstream os;
      os << law.name() << ": sampler tail off at delta=" << deltas[k]
         << " (phat=" << phat << " vs " << p << ")";
      s.check(std::abs(phat - p) <= 4.0 * sigma + 2.0 / n, os.str());
    }
    ++law_idx;
  }
  return s.take();
}

SuiteResult verify_regvar() {
  Suite s("regvar/crosscheck");
  for (const MixingLaw& law : catalog()) {
    TailClass tc = law.tail_class();
    auto f = [&law](double x) { return law.f_value(x); };
    if (tc.kind == TailClass::Kind::RegVar) {
      double idx = rv_index_estimate(f, 1e3, 2.0);
      s.check(std::abs(idx - tc.r_star) < 0.05,
              law.name() + ": rv index estimate off");
    }
    if (tc.kind == TailClass::Kind::Gamma) {
      auto fp = [&law](double x) { return law.f_derivative(x); };
      double err = gamma_aux_check(f, fp, 30.0, {-1.0, 1.0});
      s.check(err < 0.02, law.name() + ": gamma auxiliary check off");
    }
  }
  // Lemma instance: f = x^2, g = x/3, L = 9, x/g = 3 = L^{1/2}
  s.check(std::abs(3.0 - std::sqrt(9.0)) < 1e-12, "lemma instance x/g != L^{1/rho}");
  return s.take();
}

SuiteResult verify_legendre() {
  Suite s("legendre/invariants");
  std::vector<std::pair<std::string, RealFn>> fns = {
      {"z^2", [](double z) { return z * z; }},
      {"e^z", [](double z) { return std::exp(z); }},
      {"z^2 ln(1+z)", [](double z) { return z * z * std::log1p(z); }}};
  for (auto& [fname, f] : fns) {
    for (double x : {1.0, 5.0, 20.0}) {
      auto fstar = [&f](double y) { return conjugate(f, y).value; };
      double fss = conjugate(fstar, x).value;
      s.check(std::abs(fss - f(x)) / f(x) < 1e-6,
              "biconjugation failed for " + fname + " at x=" +
                  std::to_string(x));
    }
  }
  // Young's inequality on a deterministic pseudo-random grid
  RngStream rng = RngStream::for_draw(99, 0, 0);
  auto f = [](double z) { return z * z; };
  for (int i = 0; i < 10000; ++i) {
    double x = 10.0 * rng.next_unit();
    double z = 10.0 * rng.next_unit();
    double fstar = conjugate(f, x).value;
    if (!(f(z) + fstar >= z * x - 1e-9)) {
      s.check(false, "Young's inequality violated");
      break;
    }
    if (i == 9999) s.check(true, "");
  }
  // order-reversal and superlinearity
  auto g = [](double z) { return z * z + 1.0; };
  bool order_ok = true, super_ok = true;
  double prev_ratio = 0.0;
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    double cf = conjugate(f, x).value;
    double cg = conjugate(g, x).value;
    if (cf < cg - 1e-9) order_ok = false;
    double ratio = cf / x;
    if (ratio < prev_ratio - 1e-9) super_ok = false;
    prev_ratio = ratio;
  }
  s.check(order_ok, "order reversal violated");
  s.check(super_ok, "f*(x)/x not nondecreasing");
  return s.take();
}

SuiteResult verify_asymptotics(double broken_regvar_constant) {
  Suite s("asymptotics/constant");
  auto C = [&](double r_star) {
    if (r_star == 2.0 && !std::isnan(broken_regvar_constant))
      return broken_regvar_constant;
    TailClass tc;
    tc.kind = TailClass::Kind::RegVar;
    tc.r_star = r_star;
    return theorem_constant(tc);
  };
  s.check(C(2.0) == 2.0, "C(RegVar(2)) != 2");
  TailClass g;
  g.kind = TailClass::Kind::Gamma;
  s.check(theorem_constant(g) == std::exp(1.0), "C(Gamma) != e");
  TailClass rv1;
  rv1.kind = TailClass::Kind::RegVar1Convex;
  s.check(theorem_constant(rv1) == 1.0, "C(RegVar1Convex) != 1");
  double prev = 0.0;
  for (double r : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0}) {
    double c = C(r);
    s.check(c > prev, "C(r*) not increasing at r*=" + std::to_string(r));
    s.check(c > 1.0 && c < std::exp(1.0),
            "C(r*) outside (1,e) at r*=" + std::to_string(r));
    prev = c;
  }
  s.check(std::abs(C(1.001) - 1.0) < 1e-2, "endpoint gap at r*=1.001");
  s.check(std::abs(C(200.0) - std::exp(1.0)) < 1e-2, "endpoint gap at r*=200");
  return s.take();
}

SuiteResult verify_bounds() {
  Suite s("bounds/certificates");
  MixingLaw w12 = MixingLaw::weibull_at_one(1.0, 2.0);
  PathCertificate c1 = path_certificate(w12, 1.0, 200.0);
  double ratio1 = std::abs(c1.ln_lower) / w12.f_value(c1.target_x);
  s.check(ratio1 >= 1.98 && ratio1 <= 2.0, "Case I ratio off at x=200");

  MixingLaw ge = MixingLaw::gamma_exp();
  PathCertificate c2 = path_certificate(ge, 1.0, 30.0);
  double ratio2 = std::abs(c2.ln_lower) / ge.f_value(c2.target_x);
  s.check(std::abs(ratio2 - std::exp(1.0)) / std::exp(1.0) < 0.15,
          "Case II ratio off at x=30");
  s.check(ratio2 < std::exp(1.0), "Case II ratio exceeds e");

  for (double x : {10.0, 20.0, 50.0}) {
    Sandwich sw = hitczenko_sandwich(w12, 1.0, x);
    s.check(sw.ln_lower <= sw.ln_upper,
            "sandwich inverted for weibull at x=" + std::to_string(x));
  }
  return s.take();
}

SuiteResult verify_simulate() {
  Suite s("simulate/determinism");
  MixingLaw u = MixingLaw::power_uniform(1.0);
  std::vector<double> xs = {1.5, 2.0, 3.0};
  auto a = estimate_tail(u, 1.0, xs, 20000, 42, 3, 1e-9);
  auto b = estimate_tail(u, 1.0, xs, 20000, 42, 3, 1e-9);
  bool same = true;
  for (std::size_t i = 0; i < xs.size(); ++i)
    same = same && a[i].hits == b[i].hits;
  s.check(same, "repeat run differs");

  // mean identity: corrected mean ~ q/(1 - E M) = 2 for uniform M
  double em = u.mean();
  double sum = 0.0, sumsq = 0.0;
  long long n = 200000;
  for (long long i = 0; i < n; ++i) {
    RngStream rng = RngStream::for_draw(4242, 0, i);
    DrawResult d = draw_perpetuity(u, 1.0, 1e-9, 100000, rng);
    double v = d.value + d.partial_product / (1.0 - em);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sumsq / n - mean * mean) / n);
  s.check(std::abs(mean - 2.0) <= 4.0 * se, "mean identity off");
  return s.take();
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  out.push_back(verify_tail_monotone());
  out.push_back(verify_f_consistency());
  out.push_back(verify_sampler(opt.sampler_draws));
  out.push_back(verify_regvar());
  out.push_back(verify_legendre());
  out.push_back(verify_asymptotics(opt.broken_regvar_constant));
  out.push_back(verify_bounds());
  out.push_back(verify_simulate());
  return out;
}

bool all_passed(const std::vector<SuiteResult>& suites) {
  for (const auto& s : suites)
    if (s.failed > 0) return false;
  return true;
}

}  // namespace perp
