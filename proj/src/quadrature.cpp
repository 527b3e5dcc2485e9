#include "fluxknot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "fluxknot/geometry.hpp"

namespace fluxknot {

void QuadratureSpec::validate() const {
  for (int n : {n_s, n_chi, n_phi}) {
    if (n < 4) throw config_error("quadrature: need at least 4 intervals/nodes per axis");
    if (rule == QuadRule::simpson && n % 2 != 0)
      throw config_error("quadrature: Simpson rule needs an even interval count");
  }
  if (workers < 1) throw config_error("quadrature: workers must be >= 1");
}

Axis make_axis(QuadRule rule, int n, double a, double b) {
  Axis ax;
  if (rule == QuadRule::simpson) {
    const double h = (b - a) / n;
    ax.nodes.resize(n + 1);
    ax.weights.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
      ax.nodes[k] = a + k * h;
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      ax.weights[k] = w * h / 3.0;
    }
    return ax;
  }
  // Gauss-Legendre: Newton iteration on the Legendre polynomial roots.
  ax.nodes.resize(n);
  ax.weights.resize(n);
  for (int k = 0; k < n / 2 + n % 2; ++k) {
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    ax.nodes[k] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    ax.weights[k] = 0.5 * (b - a) * w;
    ax.nodes[n - 1 - k] = 0.5 * (b - a) * x + 0.5 * (a + b);
    ax.weights[n - 1 - k] = ax.weights[k];
  }
  return ax;
}

double pairwise_sum(std::span<const double> terms) {
  const size_t n = terms.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double acc = 0.0;
    for (double v : terms) acc += v;
    return acc;
  }
  const size_t half = n / 2;
  return pairwise_sum(terms.subspan(0, half)) + pairwise_sum(terms.subspan(half));
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  std::mutex mutex;
  std::exception_ptr first_error;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn, &mutex, &first_error] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

int env_worker_count() {
  const char* env = std::getenv("FLUXKNOT_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

double tensor_integrate(const QuadratureSpec& spec, double L, double chi_lo,
                        double chi_hi,
                        const std::function<double(double, double, double)>& f) {
  spec.validate();
  if (chi_hi < chi_lo) throw config_error("quadrature: chi_hi < chi_lo");
  if (chi_hi == chi_lo) return 0.0;
  const Axis as = make_axis(spec.rule, spec.n_s, 0.0, L);
  const Axis ac = make_axis(spec.rule, spec.n_chi, chi_lo, chi_hi);
  const Axis ap = make_axis(spec.rule, spec.n_phi, 0.0, kTwoPi);

  const size_t ns = as.nodes.size(), nc = ac.nodes.size(), np = ap.nodes.size();
  std::vector<double> terms(ns * nc * np);
  parallel_for(static_cast<int>(ns), spec.workers, [&](int is) {
    const double s = as.nodes[is];
    const double ws = as.weights[is];
    for (size_t ic = 0; ic < nc; ++ic)
      for (size_t ip = 0; ip < np; ++ip) {
        const double w = ws * ac.weights[ic] * ap.weights[ip];
        terms[(is * nc + ic) * np + ip] = w * f(s, ac.nodes[ic], ap.nodes[ip]);
      }
  });
  return pairwise_sum(terms);
}

}  // namespace fluxknot
