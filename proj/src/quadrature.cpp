#include "sfcdf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfcdf {

namespace {

void validate(const QuadratureSettings& s) {
  if (s.level_max < 3 || s.level_max > 16) {
    throw std::invalid_argument("QuadratureSettings: level_max must lie in [3, 16]");
  }
  if (!(s.abs_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSettings: abs_tol must be positive");
  }
  if (!(s.lower_cut < 0.0) || std::isinf(s.lower_cut)) {
    throw std::invalid_argument("QuadratureSettings: lower_cut must be finite and negative");
  }
}

// The integration window replaces the infinite lower tail: everything below
// anchor + lower_cut * scale is beyond |lower_cut| combined scales of the
// bulk and contributes less than the smallest subnormal.
QuadratureResult quad_cdf_impl(double anchor, double scale, double kappa,
                               const QuadratureSettings& s, const auto& pdf) {
  const double lo = anchor + s.lower_cut * scale;
  const double hi = std::min(kappa, anchor - s.lower_cut * scale);
  if (kappa <= lo) {
    QuadratureResult r;
    r.converged = true;
    return r;
  }
  return tanh_sinh(pdf, lo, hi, s);
}

} // namespace

QuadratureResult quad_cdf(const TruncNormalParams& p, double kappa, const QuadratureSettings& s) {
  validate(s);
  return quad_cdf_impl(-std::max(p.mu(), 0.0), p.sigma_u() + p.sigma_v(), kappa, s,
                       [&p](double t) { return tn_pdf(p, t); });
}

QuadratureResult quad_cdf(const ExpParams& p, double kappa, const QuadratureSettings& s) {
  validate(s);
  return quad_cdf_impl(0.0, p.sigma_v() + 1.0 / p.lambda(), kappa, s,
                       [&p](double t) { return exp_pdf(p, t); });
}

} // namespace sfcdf
