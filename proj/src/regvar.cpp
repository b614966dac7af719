#include "perp/regvar.hpp"

#include <cmath>
#include <stdexcept>

namespace perp {

double rv_index_estimate(const RealFn& f, double x, double lambda) {
  if (!(lambda > 1.0)) throw std::domain_error("lambda must exceed 1");
  double fx = f(x);
  if (!(fx > 0.0)) throw std::domain_error("f(x) must be positive");
  return std::log(f(lambda * x) / fx) / std::log(lambda);
}

PotterResult potter_verify(
    const RealFn& f, double rho, double A, double delta, double X,
    const std::vector<std::pair<double, double>>& pairs) {
  PotterResult res;
  for (const auto& [x, y] : pairs) {
    if (!(y > x && x > X)) throw std::domain_error("pairs must satisfy y>x>X");
    double ratio = f(y) / f(x);
    double scale = y / x;
    double lo = std::pow(scale, rho - delta) / A;
    double hi = A * std::pow(scale, rho + delta);
    if (!(ratio >= lo && ratio <= hi)) {
      res.ok = false;
      res.violator = {x, y};
      return res;
    }
  }
  return res;
}

double gamma_aux_check(const RealFn& f, const RealFn& f_prime, double x,
                       const std::vector<double>& u_grid) {
  double fx = f(x);
  double fpx = f_prime(x);
  if (!(fx > 0.0 && fpx > 0.0))
    throw std::domain_error("f and f' must be positive at x");
  double g = fx / fpx;
  double worst = 0.0;
  for (double u : u_grid) {
    double point = x + u * g;
    if (!(point > 0.0))
      throw std::domain_error("evaluation point fell outside (0,inf)");
    double eu = std::exp(u);
    double err = std::abs(f(point) / fx - eu) / eu;
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace perp
