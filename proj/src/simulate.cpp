#include "perp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "perp/quadrature.hpp"

namespace perp {

DrawResult draw_perpetuity(const MixingLaw& law, double q, double eps_trunc,
                           int max_terms, RngStream& rng) {
  if (!(q > 0.0)) throw std::domain_error("q must be positive");
  if (!(eps_trunc > 0.0 && eps_trunc < 1.0))
    throw std::domain_error("eps_trunc must lie in (0,1)");
  if (max_terms < 1) throw std::domain_error("max_terms must be >= 1");

  DrawResult r;
  double prod = 1.0;
  double sum = q;  // leading term, j = 1
  r.terms = 1;
  while (r.terms < max_terms) {
    prod *= law.sample(rng);
    if (prod < eps_trunc) break;
    sum += q * prod;
    ++r.terms;
  }
  r.value = sum;
  r.partial_product = prod;
  r.hit_max_terms = (r.terms == max_terms && prod >= eps_trunc);
  return r;
}

void wilson_ci99(long long hits, long long n, double& lo, double& hi) {
  constexpr double z = 2.5758293035489004;  // 99% two-sided normal quantile
  double nn = static_cast<double>(n);
  double p = static_cast<double>(hits) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (p + z2 / (2.0 * nn)) / denom;
  double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

std::vector<TailEstimate> estimate_tail(const MixingLaw& law, double q,
                                        const std::vector<double>& xs,
                                        long long n_samples,
                                        std::uint64_t seed, int workers,
                                        double eps_trunc, int max_terms) {
  if (xs.empty()) throw std::invalid_argument("xs must be nonempty");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw std::invalid_argument("xs must be sorted ascending");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");

  const std::size_t nx = xs.size();
  std::vector<std::vector<long long>> hits(workers,
                                           std::vector<long long>(nx, 0));

  // draws are keyed by global index, so the estimate is invariant to the
  // worker count, not just reproducible for a fixed one
  auto run_worker = [&](int w, long long first, long long count) {
    auto& h = hits[w];
    for (long long i = 0; i < count; ++i) {
      RngStream rng = RngStream::for_draw(
          seed, 0, static_cast<std::uint64_t>(first + i));
      DrawResult d = draw_perpetuity(law, q, eps_trunc, max_terms, rng);
      // xs sorted: first index with xs[j] >= value; all j below are hits
      auto it = std::lower_bound(xs.begin(), xs.end(), d.value);
      for (std::size_t j = 0; j < static_cast<std::size_t>(it - xs.begin());
           ++j)
        ++h[j];
    }
  };

  long long base = n_samples / workers;
  long long rem = n_samples % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long long first = 0;
  for (int w = 0; w < workers; ++w) {
    long long count = base + (w < rem ? 1 : 0);
    pool.emplace_back(run_worker, w, first, count);
    first += count;
  }
  for (auto& t : pool) t.join();

  std::vector<TailEstimate> out(nx);
  for (std::size_t j = 0; j < nx; ++j) {
    long long total = 0;
    for (int w = 0; w < workers; ++w) total += hits[w][j];
    TailEstimate& e = out[j];
    e.x = xs[j];
    e.n_samples = n_samples;
    e.hits = total;
    e.p_hat = static_cast<double>(total) / static_cast<double>(n_samples);
    wilson_ci99(total, n_samples, e.ci99_lo, e.ci99_hi);
    e.ln_p_hat_valid = total > 0;
    e.ln_p_hat = e.ln_p_hat_valid ? std::log(e.p_hat) : 0.0;
    e.seed = seed;
    e.workers = workers;
    e.eps_trunc = eps_trunc;
  }
  return out;
}

namespace {

// P(V_k > y) with V_0 = 1, V_k = 1 + M V_{k-1}
double tail_v(const MixingLaw& law, int k, double y, double tol) {
  if (k == 0) return y < 1.0 ? 1.0 : 0.0;
  if (y < 1.0) return 1.0;
  if (y == 1.0) return 1.0 - law.atom_at_zero_mass();

  if (law.family() == MixingLaw::Family::Degenerate) {
    double m = law.param_a();
    if (m <= 0.0) return 0.0;
    return tail_v(law, k - 1, (y - 1.0) / m, tol);
  }

  double y1 = y - 1.0;

  // P(V_1 > y) = P(M > y - 1), available in closed form; this also keeps
  // the k = 2 integrand continuous (no indicator jump to resolve)
  if (k == 1) {
    if (y1 >= 1.0) return 0.0;
    return std::exp(law.ln_tail_at(1.0 - y1));
  }

  double total = law.atom_at_one_mass() * tail_v(law, k - 1, y1, tol);

  auto integrand = [&](double d) {
    double lw = law.ln_density(d);
    if (!std::isfinite(lw)) return 0.0;
    double m = 1.0 - d;
    if (m <= 0.0) return 0.0;
    return std::exp(lw) * tail_v(law, k - 1, y1 / m, tol * 0.25);
  };
  QuadResult q =
      adaptive_simpson(integrand, 0.0, law.delta_cutoff(), tol);
  if (!q.converged)
    throw std::runtime_error(
        "small-n oracle quadrature did not reach tolerance; achieved " +
        std::to_string(q.abs_error));
  return total + q.value;
}

}  // namespace

double exact_small_n_oracle(const MixingLaw& law, double q, int n, double x,
                            double tol) {
  if (n < 1 || n > 3) throw std::invalid_argument("n must be in {1,2,3}");
  if (!(q > 0.0)) throw std::domain_error("q must be positive");
  return tail_v(law, n, x / q, tol);
}

}  // namespace perp
