#include "perp/mixing_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "perp/quadrature.hpp"

namespace perp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogPowerCutoff = 0.36787944117144233;  // 1/e

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be positive");
}
}  // namespace

MixingLaw MixingLaw::power_uniform(double alpha) {
  require_positive(alpha, "alpha");
  MixingLaw l;
  l.family_ = Family::PowerUniform;
  l.a_ = alpha;
  return l;
}

MixingLaw MixingLaw::weibull_at_one(double c, double alpha) {
  require_positive(c, "c");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  MixingLaw l;
  l.family_ = Family::WeibullAtOne;
  l.a_ = c;
  l.b_ = alpha;
  return l;
}

MixingLaw MixingLaw::log_power(double beta, double eta) {
  require_positive(beta, "beta");
  require_positive(eta, "eta");
  MixingLaw l;
  l.family_ = Family::LogPower;
  l.a_ = beta;
  l.b_ = eta;
  return l;
}

MixingLaw MixingLaw::gamma_exp() {
  MixingLaw l;
  l.family_ = Family::GammaExp;
  return l;
}

MixingLaw MixingLaw::rapid_non_gamma() {
  MixingLaw l;
  l.family_ = Family::RapidNonGamma;
  return l;
}

MixingLaw MixingLaw::atom_at_one(double p, MixingLaw base) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
  if (base.family_ == Family::AtomAtOne)
    throw std::invalid_argument("base law may not itself carry an atom at 1");
  MixingLaw l;
  l.family_ = Family::AtomAtOne;
  l.a_ = p;
  l.base_ = std::make_shared<MixingLaw>(std::move(base));
  return l;
}

MixingLaw MixingLaw::degenerate(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw std::invalid_argument("m must be in [0,1]");
  MixingLaw l;
  l.family_ = Family::Degenerate;
  l.a_ = m;
  return l;
}

std::string MixingLaw::name() const {
  switch (family_) {
    case Family::PowerUniform:
      return "power_uniform(alpha=" + std::to_string(a_) + ")";
    case Family::WeibullAtOne:
      return "weibull_at_one(c=" + std::to_string(a_) +
             ",alpha=" + std::to_string(b_) + ")";
    case Family::LogPower:
      return "log_power(beta=" + std::to_string(a_) +
             ",eta=" + std::to_string(b_) + ")";
    case Family::GammaExp:
      return "gamma_exp";
    case Family::RapidNonGamma:
      return "rapid_non_gamma";
    case Family::AtomAtOne:
      return "atom_at_one(p=" + std::to_string(a_) + "," + base_->name() + ")";
    case Family::Degenerate:
      return "degenerate(m=" + std::to_string(a_) + ")";
  }
  return "?";
}

double MixingLaw::ln_tail_at(double delta) const {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::domain_error("delta must lie in (0,1]");
  switch (family_) {
    case Family::PowerUniform:
      // ln(1 - (1-delta)^alpha), via log1p for accuracy at small delta
      return std::log(-std::expm1(a_ * std::log1p(-delta)));
    case Family::WeibullAtOne:
      return -a_ * std::pow(delta, 1.0 - b_);
    case Family::LogPower:
      if (delta > kLogPowerCutoff) return -a_;
      return -a_ * std::pow(-std::log(delta), b_);
    case Family::GammaExp:
      return -delta * std::exp(1.0 / delta);
    case Family::RapidNonGamma:
      return -delta * std::exp(2.0 / delta - std::cos(1.0 / delta));
    case Family::AtomAtOne:
      return std::log(a_ + (1.0 - a_) * std::exp(base_->ln_tail_at(delta)));
    case Family::Degenerate:
      return delta > 1.0 - a_ ? 0.0 : -kInf;
  }
  return 0.0;
}

double MixingLaw::ln_tail_deriv_log(double delta) const {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::domain_error("delta must lie in (0,1]");
  switch (family_) {
    case Family::PowerUniform: {
      // L'(d) = alpha (1-d)^{alpha-1} / (1 - (1-d)^alpha)
      double lt = ln_tail_at(delta);
      return std::log(a_) + (a_ - 1.0) * std::log1p(-delta) - lt;
    }
    case Family::WeibullAtOne:
      return std::log(a_ * (b_ - 1.0)) - b_ * std::log(delta);
    case Family::LogPower:
      if (delta > kLogPowerCutoff) return -kInf;
      return std::log(a_ * b_) + (b_ - 1.0) * std::log(-std::log(delta)) -
             std::log(delta);
    case Family::GammaExp:
      // L'(d) = e^{1/d} (1/d - 1)
      if (delta >= 1.0) return -kInf;
      return 1.0 / delta + std::log(1.0 / delta - 1.0);
    case Family::RapidNonGamma: {
      double u = 1.0 / delta;
      double phi = 2.0 * u - std::cos(u);
      double factor = (2.0 + std::sin(u)) * u - 1.0;  // > 0 on (0,1]
      return phi + std::log(factor);
    }
    case Family::AtomAtOne: {
      double lb = base_->ln_tail_at(delta);
      return std::log1p(-a_) + lb + base_->ln_tail_deriv_log(delta) -
             ln_tail_at(delta);
    }
    case Family::Degenerate:
      throw std::domain_error("degenerate law has no tail derivative");
  }
  return 0.0;
}

double MixingLaw::ln_tail_deriv(double delta) const {
  return std::exp(ln_tail_deriv_log(delta));
}

double MixingLaw::f_value(double x) const {
  if (!(x >= 1.0)) throw std::domain_error("x must be >= 1");
  return -x * ln_tail_at(1.0 / x);
}

double MixingLaw::f_derivative(double x) const {
  if (!(x >= 1.0)) throw std::domain_error("x must be >= 1");
  double d = 1.0 / x;
  // f(x) = -x L(1/x)  =>  f'(x) = -L(1/x) + L'(1/x)/x
  return -ln_tail_at(d) + std::exp(ln_tail_deriv_log(d) - std::log(x));
}

TailClass MixingLaw::tail_class() const {
  TailClass tc;
  switch (family_) {
    case Family::PowerUniform:
      tc.kind = TailClass::Kind::RegVar1Convex;
      tc.aux_description = "f(x) ~ x ln x";
      break;
    case Family::LogPower:
      tc.kind = TailClass::Kind::RegVar1Convex;
      tc.aux_description = "f(x) = beta x (ln x)^eta for x >= e";
      break;
    case Family::WeibullAtOne:
      tc.kind = TailClass::Kind::RegVar;
      tc.r_star = b_;
      break;
    case Family::GammaExp:
      tc.kind = TailClass::Kind::Gamma;
      tc.aux_description = "f(x) = e^x, auxiliary g = f/f' = 1";
      break;
    case Family::RapidNonGamma:
      tc.kind = TailClass::Kind::RapidNonGamma;
      tc.aux_description = "f(x) = exp(2x - cos x)";
      break;
    case Family::AtomAtOne:
      tc.kind = TailClass::Kind::AtomAtOne;
      tc.p = a_;
      break;
    case Family::Degenerate:
      throw std::logic_error("degenerate law has no tail class");
  }
  return tc;
}

double MixingLaw::atom_at_zero_mass() const {
  switch (family_) {
    case Family::PowerUniform:
      return 0.0;
    case Family::AtomAtOne:
      return (1.0 - a_) * base_->atom_at_zero_mass();
    case Family::Degenerate:
      return a_ == 0.0 ? 1.0 : 0.0;
    default:
      return -std::expm1(ln_tail_at(1.0));
  }
}

double MixingLaw::atom_at_one_mass() const {
  return family_ == Family::AtomAtOne ? a_ : 0.0;
}

double MixingLaw::delta_cutoff() const {
  switch (family_) {
    case Family::LogPower:
      return kLogPowerCutoff;
    case Family::AtomAtOne:
      return base_->delta_cutoff();
    case Family::Degenerate:
      return 0.0;
    default:
      return 1.0;
  }
}

double MixingLaw::ln_density(double delta) const {
  // density of the continuous part in delta: w = L' exp(L)
  switch (family_) {
    case Family::PowerUniform:
      // w(d) = alpha (1-d)^{alpha-1}, valid down to d = 0
      if (delta == 0.0 || a_ == 1.0) return std::log(a_);
      return std::log(a_) + (a_ - 1.0) * std::log1p(-delta);
    case Family::AtomAtOne:
      return std::log1p(-a_) + base_->ln_density(delta);
    case Family::Degenerate:
      return -kInf;
    default:
      if (delta <= 0.0) return -kInf;
      if (delta > delta_cutoff()) return -kInf;
      return ln_tail_deriv_log(delta) + ln_tail_at(delta);
  }
}

double MixingLaw::sample(RngStream& rng) const {
  switch (family_) {
    case Family::PowerUniform:
      return std::pow(rng.next_unit(), 1.0 / a_);
    case Family::WeibullAtOne: {
      double u = rng.next_unit();
      double atom = -std::expm1(-a_);
      if (u < atom) return 0.0;
      double d = std::pow(-std::log1p(-u) / a_, 1.0 / (1.0 - b_));
      return 1.0 - d;
    }
    case Family::LogPower: {
      double u = rng.next_unit();
      double lt = std::log1p(-u);  // target ln P(M > m)
      if (lt > -a_) return 0.0;    // below the cutoff tail level
      double d = std::exp(-std::pow(-lt / a_, 1.0 / b_));
      return 1.0 - d;
    }
    case Family::GammaExp:
    case Family::RapidNonGamma: {
      double u = rng.next_unit();
      double lt = std::log1p(-u);
      if (lt > ln_tail_at(1.0)) return 0.0;
      // monotone bisection for ln_tail_at(d) = lt
      double lo = 0.0, hi = 1.0;
      while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        double v = mid > 0.0 ? ln_tail_at(mid) : -kInf;
        if (v < lt)
          lo = mid;
        else
          hi = mid;
      }
      return 1.0 - 0.5 * (lo + hi);
    }
    case Family::AtomAtOne: {
      if (rng.next_unit() < a_) return 1.0;
      return base_->sample(rng);
    }
    case Family::Degenerate:
      return a_;
  }
  return 0.0;
}

double MixingLaw::mean() const {
  switch (family_) {
    case Family::PowerUniform:
      return a_ / (a_ + 1.0);
    case Family::Degenerate:
      return a_;
    case Family::AtomAtOne:
      return a_ + (1.0 - a_) * base_->mean();
    default: {
      auto integrand = [this](double d) {
        double lw = ln_density(d);
        return std::isfinite(lw) ? (1.0 - d) * std::exp(lw) : 0.0;
      };
      QuadResult q = integrate_near_zero(integrand, delta_cutoff(), 1e-10);
      return q.value;
    }
  }
}

}  // namespace perp
