#pragma once
// Deterministic quadrature over the tube chart. Terms are materialized into a
// flat array in a fixed index order and reduced by pairwise summation, so the
// result is bit-identical for any worker count.

#include <functional>
#include <span>
#include <vector>

#include "fluxknot/errors.hpp"

namespace fluxknot {

enum class QuadRule { simpson, gauss_legendre };

struct QuadratureSpec {
  QuadRule rule = QuadRule::simpson;
  // Subinterval count (Simpson, must be even) or node count (Gauss-Legendre),
  // per axis (s, chi, phi).
  int n_s = 32, n_chi = 32, n_phi = 32;
  int workers = 1;

  void validate() const;
};

struct Axis {
  std::vector<double> nodes, weights;
};

Axis make_axis(QuadRule rule, int n, double a, double b);

// Fixed-order pairwise reduction.
double pairwise_sum(std::span<const double> terms);

// Chunked index loop; fn(i) must only touch slot i of shared state.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

// Worker count from FLUXKNOT_THREADS (>= 1; 1 when unset or malformed).
int env_worker_count();

// Integral of f(s, chi, phi) over [0,L] x [chi_lo, chi_hi] x [0, 2 pi].
double tensor_integrate(const QuadratureSpec& spec, double L, double chi_lo,
                        double chi_hi,
                        const std::function<double(double, double, double)>& f);

}  // namespace fluxknot
