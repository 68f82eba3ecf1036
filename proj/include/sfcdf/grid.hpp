#pragma once

#include <string>
#include <vector>

#include "sfcdf/composed_error.hpp"

namespace sfcdf {

/// The simulation parameter grid: every permutation of the entries defines
/// one evaluation cell. Defaults are the benchmark sets
///   mu       in {-8,-4,-2,-1,1,2,4,8}
///   sigma_u  in {0.25,0.5,1,2,4}
///   sigma_v  in {0.25,0.5,1,2,4}
///   lambda   in {0.25,0.5,1,2,4,8}
///   p        in {0.01,0.05,0.1,0.25,0.5,0.75,0.9,0.95,0.99}
struct GridSpec {
  std::vector<double> mu;
  std::vector<double> sigma_u;
  std::vector<double> sigma_v;
  std::vector<double> lambda;
  std::vector<double> p;

  static GridSpec defaults();

  /// Parses a flat `key = v1,v2,...` text file (keys mu, sigma_u, sigma_v,
  /// lambda, p; missing keys keep their defaults, '#' starts a comment).
  /// Throws std::runtime_error on unreadable files or malformed lines.
  static GridSpec from_file(const std::string& path);

  /// Enforces positive scales and a strictly increasing p list inside (0,1).
  void validate() const;
};

struct TnCell {
  double mu, sigma_u, sigma_v;
};
struct ExpCell {
  double lambda, sigma_v;
};

/// Cells in deterministic (row-major over the parameter lists) order.
std::vector<TnCell> tn_cells(const GridSpec& g);
std::vector<ExpCell> exp_cells(const GridSpec& g);

/// `count` evaluation abscissas whose cdf values span [p_lo, p_hi]: the two
/// end quantiles are bracketed by bisection on the default analytic cdf and
/// the rest fill the interval uniformly. Used to pick representative kappa
/// values per grid cell for equivalence/benchmark sweeps.
std::vector<double> kappa_span(const TruncNormalParams& p, int count,
                               double p_lo = 0.001, double p_hi = 0.999);
std::vector<double> kappa_span(const ExpParams& p, int count,
                               double p_lo = 0.001, double p_hi = 0.999);

} // namespace sfcdf
