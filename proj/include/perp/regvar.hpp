#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace perp {

using RealFn = std::function<double(double)>;

// Regular-variation index read off as a log-ratio at finite x:
// ln(f(lambda x)/f(x)) / ln lambda. Exact for pure powers.
double rv_index_estimate(const RealFn& f, double x, double lambda);

struct PotterResult {
  bool ok = true;
  std::pair<double, double> violator{0.0, 0.0};  // first failing (x,y)
};

// Checks (1/A)(y/x)^{rho-delta} <= f(y)/f(x) <= A (y/x)^{rho+delta}
// for each pair; stops at the first violation.
PotterResult potter_verify(const RealFn& f, double rho, double A, double delta,
                           double X,
                           const std::vector<std::pair<double, double>>& pairs);

// Max relative error of f(x + u f(x)/f'(x))/f(x) against e^u over the
// u grid. Small values certify Gamma-class behavior at scale x.
double gamma_aux_check(const RealFn& f, const RealFn& f_prime, double x,
                       const std::vector<double>& u_grid);

}  // namespace perp
