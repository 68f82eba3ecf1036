#include "sfcdf/composed_error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sfcdf/special_functions.hpp"

namespace sfcdf {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032974;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double log_std_normal_pdf(double x) { return -0.5 * x * x - kHalfLog2Pi; }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double clamp01(double f) { return std::clamp(f, 0.0, 1.0); }

} // namespace

TruncNormalParams::TruncNormalParams(double mu, double sigma_u, double sigma_v)
    : mu_(mu), sigma_u_(sigma_u), sigma_v_(sigma_v) {
  require(std::isfinite(mu), "TruncNormalParams: mu must be finite");
  require(std::isfinite(sigma_u) && sigma_u > 0.0,
          "TruncNormalParams: sigma_u must be positive and finite");
  require(std::isfinite(sigma_v) && sigma_v > 0.0,
          "TruncNormalParams: sigma_v must be positive and finite");
  s_ = std::hypot(sigma_u, sigma_v);
  a_ = mu * s_ / (sigma_v * sigma_u);
  b_ = -sigma_u / sigma_v;
  m0_ = mu / sigma_u; // == a / sqrt(1 + b^2)
  rho_ = sigma_u / s_;
  norm_ = std_normal_cdf(m0_);
  log_norm_ = log_std_normal_cdf(m0_);
}

ExpParams::ExpParams(double lambda, double sigma_v) : lambda_(lambda), sigma_v_(sigma_v) {
  require(std::isfinite(lambda) && lambda > 0.0,
          "ExpParams: lambda must be positive and finite");
  require(std::isfinite(sigma_v) && sigma_v > 0.0,
          "ExpParams: sigma_v must be positive and finite");
  a_ = -lambda * sigma_v;
}

double tn_pdf(const TruncNormalParams& p, double eps) {
  if (std::isinf(eps)) return 0.0;
  const double y = p.standardized(eps);
  const double z = (p.mu() * p.sigma_v() * p.sigma_v() - eps * p.sigma_u() * p.sigma_u()) /
                   (p.combined_scale() * p.sigma_v() * p.sigma_u());
  return std::exp(log_std_normal_pdf(y) + log_std_normal_cdf(z) - p.log_normalizer() -
                  std::log(p.combined_scale()));
}

double exp_pdf(const ExpParams& p, double eps) {
  if (std::isinf(eps)) return 0.0;
  const double lam = p.lambda();
  const double sv = p.sigma_v();
  return std::exp(std::log(lam) + lam * eps + 0.5 * sv * sv * lam * lam +
                  log_std_normal_cdf(-eps / sv - lam * sv));
}

double tn_cdf_bvn(const TruncNormalParams& p, double kappa) {
  if (std::isinf(kappa)) return kappa > 0 ? 1.0 : 0.0;
  const double yk = p.standardized(kappa);
  const double m0 = p.mu_over_sigma_u();
  double f;
  if (m0 <= -3.0) {
    // BvN(m0, yk, rho) and Phi(m0) shrink together with exp(-m0^2/2); the
    // conditional form evaluates their ratio without ever forming either.
    f = detail::bvn_cdf_conditional(m0, yk, p.rho());
  } else {
    f = bvn_cdf(m0, yk, p.rho()) / p.normalizer();
  }
  return clamp01(f);
}

double tn_cdf_owen(const TruncNormalParams& p, double kappa, double singular_width) {
  if (p.mu() == 0.0) {
    throw std::domain_error("tn_cdf_owen: mu = 0 has a closed form; use half_normal_cdf");
  }
  if (std::isinf(kappa)) return kappa > 0 ? 1.0 : 0.0;

  const double yk = p.standardized(kappa);
  const double m0 = p.mu_over_sigma_u();
  const double phi_m0 = p.normalizer();
  const double a = p.a();
  const double b = p.b();

  double bracket, max_term;
  if (std::fabs(yk) < singular_width) {
    // limit of the representation on the phi(kappa) = 0 line, where the g
    // arguments of both T terms diverge; reduces to 1/2 Phi(m0) - T(m0, b)
    const double t = owen_t(m0, b);
    bracket = 0.5 * phi_m0 - t;
    max_term = std::max(0.5 * phi_m0, std::fabs(t));
  } else {
    const double t1 = owen_t(yk, (a + b * yk) / yk);
    const double t2 = owen_t(m0, (a * b + yk * (1.0 + b * b)) / a);
    // When the indicator term 1/2 * 1(m0/yk < 0) is active it nearly cancels
    // 1/2 Phi(yk); folding the pair into -1/2 Phi(-yk) keeps the difference
    // exact instead of losing it to absorption against 1/2.
    const double head = (m0 / yk < 0.0) ? -0.5 * std_normal_cdf(-yk) : 0.5 * std_normal_cdf(yk);
    bracket = head + 0.5 * phi_m0 - t1 - t2;
    max_term = std::max({std::fabs(head), 0.5 * phi_m0, std::fabs(t1), std::fabs(t2)});
  }

  // The bracket terms cancel down to F * Phi(m0). Once roundoff in the terms
  // can move the normalized value past ~1e-11, the representation has run
  // out of precision; delegate to the bivariate-normal form.
  const double err_est = 8.0 * kEps * max_term;
  if (!(phi_m0 > 0.0) || err_est > 1e-11 * phi_m0) {
    return tn_cdf_bvn(p, kappa);
  }
  return clamp01(bracket / phi_m0);
}

double half_normal_cdf(double sigma_u, double sigma_v, double kappa) {
  require(std::isfinite(sigma_u) && sigma_u > 0.0,
          "half_normal_cdf: sigma_u must be positive and finite");
  require(std::isfinite(sigma_v) && sigma_v > 0.0,
          "half_normal_cdf: sigma_v must be positive and finite");
  if (std::isinf(kappa)) return kappa > 0 ? 1.0 : 0.0;
  const double s = std::hypot(sigma_u, sigma_v);
  return clamp01(2.0 * owen_t(kappa / s, sigma_u / sigma_v) + std_normal_cdf(kappa / s));
}

double exp_cdf_direct(const ExpParams& p, double kappa) {
  if (std::isinf(kappa)) return kappa > 0 ? 1.0 : 0.0;
  const double a = p.a();
  const double y = p.standardized(kappa);
  // 1 + e^{-a^2/2} [e^{a y} Phi(y) - e^{a^2/2} Phi(y - a)] rearranged into two
  // positive terms; the exponent alone reaches +-512 on the benchmark grid
  return clamp01(std_normal_cdf(a - y) +
                 std::exp(a * y - 0.5 * a * a + log_std_normal_cdf(y)));
}

double emg_cdf(double x, double sigma, double lambda) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double ls = lambda * sigma;
  return clamp01(std_normal_cdf(x / sigma) -
                 std::exp(-lambda * x + 0.5 * ls * ls +
                          log_std_normal_cdf(x / sigma - ls)));
}

double exp_cdf_emg(const ExpParams& p, double kappa) {
  if (std::isinf(kappa)) return kappa > 0 ? 1.0 : 0.0;
  // -eps = u - v is exponentially-modified-Gaussian distributed, so
  // F(kappa) = 1 - F_EMG(-kappa)
  return clamp01(1.0 - emg_cdf(-kappa, p.sigma_v(), p.lambda()));
}

double cdf(const TruncNormalParams& p, double kappa, Orientation orientation, TnMethod method) {
  const double at = orientation == Orientation::cost ? -kappa : kappa;
  const double f = method == TnMethod::bvn ? tn_cdf_bvn(p, at) : tn_cdf_owen(p, at);
  return orientation == Orientation::cost ? 1.0 - f : f;
}

double cdf(const ExpParams& p, double kappa, Orientation orientation, ExpMethod method) {
  const double at = orientation == Orientation::cost ? -kappa : kappa;
  const double f = method == ExpMethod::emg ? exp_cdf_emg(p, at) : exp_cdf_direct(p, at);
  return orientation == Orientation::cost ? 1.0 - f : f;
}

} // namespace sfcdf
