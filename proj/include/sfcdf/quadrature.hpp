#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "sfcdf/composed_error.hpp"

namespace sfcdf {

/// Controls for the tanh-sinh (double exponential) quadrature oracle.
struct QuadratureSettings {
  int level_max = 12;       // refinement levels; step halves per level
  double abs_tol = 1e-12;   // absolute convergence target
  double lower_cut = -40.0; // effective -infinity, in standardized units
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int level = 0;
  std::size_t evaluations = 0;
};

/// Tanh-sinh quadrature of f over the finite interval [a, b]. Starts from
/// step h = 1 and halves it per level, reusing previous evaluations; the
/// error estimate is the last inter-level difference. Non-convergence at
/// level_max is reported through `converged`, never silently dropped.
template <class F>
QuadratureResult tanh_sinh(F&& f, double a, double b, const QuadratureSettings& s = {}) {
  QuadratureResult res;
  if (!(a < b)) {
    res.converged = true;
    return res;
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  constexpr double pi_half = 1.5707963267948966;
  // weights underflow once (pi/2) sinh(t) passes ~ 350; t stays below ~6.2
  constexpr double t_cut = 6.2;

  auto node_sum = [&](double h, int stride_from, int stride) {
    // sum of w(t) f(x(t)) over t = j*h for j = stride_from, stride_from+stride, ...
    // accumulated in extended precision so thousands of terms do not erode
    // the last digits the oracle is asked for
    long double acc = 0.0L;
    for (int j = stride_from;; j += stride) {
      const double t = j * h;
      if (t > t_cut) break;
      const double u = pi_half * std::sinh(t);
      const double ch = std::cosh(u);
      const double w = pi_half * std::cosh(t) / (ch * ch);
      if (!(w > 1e-320)) break;
      const double y = std::tanh(u); // in (-1, 1)
      double term = w * f(mid + half * y);
      if (j != 0) term += w * f(mid - half * y);
      res.evaluations += (j == 0) ? 1 : 2;
      acc += term;
    }
    return acc;
  };

  double h = 1.0;
  long double sum = node_sum(h, 0, 1); // level 0: all integer nodes
  double estimate = static_cast<double>(half * h * sum);
  for (int level = 1; level <= s.level_max; ++level) {
    h *= 0.5;
    sum += node_sum(h, 1, 2); // refinement adds the odd multiples of the new h
    const double next = static_cast<double>(half * h * sum);
    res.error_estimate = std::fabs(next - estimate);
    estimate = next;
    res.level = level;
    if (level >= 2 && res.error_estimate <= s.abs_tol) {
      res.converged = true;
      break;
    }
  }
  res.value = estimate;
  return res;
}

/// Numerical cdf of the composed error: tanh-sinh integration of the family
/// pdf over (-inf, kappa], the infinite tail truncated `lower_cut`
/// standardized units below the bulk of the distribution.
QuadratureResult quad_cdf(const TruncNormalParams& p, double kappa,
                          const QuadratureSettings& s = {});
QuadratureResult quad_cdf(const ExpParams& p, double kappa,
                          const QuadratureSettings& s = {});

} // namespace sfcdf
