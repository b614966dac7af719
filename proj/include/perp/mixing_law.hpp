#pragma once

#include <memory>
#include <string>

#include "perp/rng.hpp"

namespace perp {

// Which case of the log-tail limit theorem a mixing law falls under.
struct TailClass {
  enum class Kind { RegVar, RegVar1Convex, Gamma, AtomAtOne, RapidNonGamma };
  Kind kind = Kind::RegVar1Convex;
  double r_star = 0.0;  // index, kind == RegVar only
  double p = 0.0;       // atom mass, kind == AtomAtOne only
  std::string aux_description;
};

// Distribution of the multiplicative factor M on [0,1], pinned by a
// closed-form log-tail ln P(M > 1-delta) near 1. Any mass the closed form
// does not cover sits as an atom at 0, which leaves the tail asymptotics
// untouched. Immutable after construction; sampling takes an explicit
// caller-owned RNG stream.
class MixingLaw {
 public:
  enum class Family {
    PowerUniform,   // M = U^{1/alpha}
    WeibullAtOne,   // ln P(M > 1-d) = -c d^{1-alpha}, alpha > 1
    LogPower,       // ln P(M > 1-d) = -beta (-ln d)^eta for d <= 1/e
    GammaExp,       // ln P(M > 1-d) = -d e^{1/d},  f(x) = e^x
    RapidNonGamma,  // f(x) = exp(2x - cos x), rapidly varying, not Gamma
    AtomAtOne,      // P(M = 1) = p, else draw from base law
    Degenerate      // M = m with probability 1 (test/support law)
  };

  static MixingLaw power_uniform(double alpha);
  static MixingLaw weibull_at_one(double c, double alpha);
  static MixingLaw log_power(double beta, double eta);
  static MixingLaw gamma_exp();
  static MixingLaw rapid_non_gamma();
  static MixingLaw atom_at_one(double p, MixingLaw base);
  static MixingLaw degenerate(double m);

  Family family() const { return family_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  const MixingLaw* base() const { return base_.get(); }
  std::string name() const;

  // ln P(M > 1 - delta), closed form; delta in (0,1]
  double ln_tail_at(double delta) const;
  // d/d delta of ln_tail_at, closed form
  double ln_tail_deriv(double delta) const;
  // ln of ln_tail_deriv, safe where the plain derivative overflows
  double ln_tail_deriv_log(double delta) const;

  // f(x) = -x ln P(M > 1 - 1/x), x >= 1
  double f_value(double x) const;
  double f_derivative(double x) const;

  TailClass tail_class() const;

  // exact inversion draw
  double sample(RngStream& rng) const;

  // atoms and the absolutely continuous part, in the variable delta = 1-m
  double atom_at_zero_mass() const;
  double atom_at_one_mass() const;
  double delta_cutoff() const;            // density support is (0, cutoff]
  double ln_density(double delta) const;  // ln of the density in delta

  double mean() const;

 private:
  MixingLaw() = default;

  Family family_ = Family::PowerUniform;
  double a_ = 0.0;
  double b_ = 0.0;
  std::shared_ptr<const MixingLaw> base_;
};

}  // namespace perp
