#pragma once

#include <cstdint>

namespace sfcdf {

/// Evaluation orientation of the composed error.
/// production: eps = v - u. cost: eps* = v + u, with
/// F_{eps*}(kappa) = 1 - F_eps(-kappa).
enum class Orientation : std::uint8_t { production, cost };

/// Analytic representations of the truncated-normal-family cdf.
enum class TnMethod : std::uint8_t { bvn, owen };

/// Analytic representations of the exponential-family cdf.
enum class ExpMethod : std::uint8_t { emg, direct };

/// Parameters of the composed error eps = v - u with v ~ N(0, sigma_v^2) and
/// u ~ TN(mu, sigma_u^2, 0, inf). Immutable once constructed; derived
/// quantities are cached. mu = 0 is the half-normal special case.
class TruncNormalParams {
 public:
  /// Throws std::invalid_argument unless sigma_u > 0, sigma_v > 0 and all
  /// three values are finite.
  TruncNormalParams(double mu, double sigma_u, double sigma_v);

  double mu() const { return mu_; }
  double sigma_u() const { return sigma_u_; }
  double sigma_v() const { return sigma_v_; }

  /// sqrt(sigma_v^2 + sigma_u^2), the scale of the substituted coordinate.
  double combined_scale() const { return s_; }

  /// a = mu * sqrt(sigma_v^2 + sigma_u^2) / (sigma_v * sigma_u); same sign as mu.
  double a() const { return a_; }
  /// b = -sigma_u / sigma_v; always negative.
  double b() const { return b_; }

  /// a / sqrt(1 + b^2), which reduces exactly to mu / sigma_u.
  double mu_over_sigma_u() const { return m0_; }
  /// -b / sqrt(1 + b^2) = sigma_u / combined_scale(), in (0, 1).
  double rho() const { return rho_; }

  /// Phi(mu / sigma_u), the truncation normalizer, and its log.
  double normalizer() const { return norm_; }
  double log_normalizer() const { return log_norm_; }

  /// The substituted coordinate phi(kappa) = (kappa + mu) / combined_scale().
  double standardized(double kappa) const { return (kappa + mu_) / s_; }

 private:
  double mu_, sigma_u_, sigma_v_;
  double s_, a_, b_, m0_, rho_, norm_, log_norm_;
};

/// Parameters of the composed error eps = v - u with v ~ N(0, sigma_v^2) and
/// u ~ Exp(lambda), lambda the rate.
class ExpParams {
 public:
  /// Throws std::invalid_argument unless lambda > 0, sigma_v > 0, both finite.
  ExpParams(double lambda, double sigma_v);

  double lambda() const { return lambda_; }
  double sigma_v() const { return sigma_v_; }

  /// a = -lambda * sigma_v; always negative.
  double a() const { return a_; }

  /// The substituted coordinate phi(kappa) = -(kappa + lambda sigma_v^2) / sigma_v.
  double standardized(double kappa) const { return -(kappa + lambda_ * sigma_v_ * sigma_v_) / sigma_v_; }

 private:
  double lambda_, sigma_v_;
  double a_;
};

/// Density of eps = v - u for the truncated-normal family, evaluated in log
/// space so extreme truncation (|mu|/sigma_u up to ~38) cannot overflow the
/// normalizer. Underflows to 0 in the far tails.
double tn_pdf(const TruncNormalParams& p, double eps);

/// Density of eps = v - u for the exponential family, evaluated as
/// exp(log lambda + lambda eps + sigma_v^2 lambda^2 / 2 + log Phi(...)); the
/// exponent pieces individually reach the hundreds for lambda sigma_v = 32.
double exp_pdf(const ExpParams& p, double eps);

/// Truncated-normal-family cdf as a rescaled bivariate normal cdf:
///   F(kappa) = BvN(mu/sigma_u, phi(kappa), rho = sigma_u/s) / Phi(mu/sigma_u).
/// The default truncated-normal method. For mu/sigma_u <= -3 the ratio is
/// evaluated through the conditional tail form to keep absolute accuracy in
/// the normalized value.
double tn_cdf_bvn(const TruncNormalParams& p, double kappa);

/// Truncated-normal-family cdf through Owen's T function. mu must be nonzero
/// (throws std::domain_error for mu = 0; use half_normal_cdf). Within
/// `singular_width` of the phi(kappa) = 0 line the analytic limit expression
/// is used instead of the raw formula, whose two T terms individually
/// diverge there. When cancellation among the bracket terms would cost more
/// than ~1e-10 of the result, falls back to the tn_cdf_bvn evaluation.
double tn_cdf_owen(const TruncNormalParams& p, double kappa,
                   double singular_width = 1e-10);

/// Closed form for the half-normal case (mu = 0):
///   F(kappa) = 2 T(kappa/s, sigma_u/sigma_v) + Phi(kappa/s).
double half_normal_cdf(double sigma_u, double sigma_v, double kappa);

/// Exponential-family cdf in the exp-function representation
///   F(kappa) = 1 + e^{-a^2/2} [ e^{a phi(kappa)} Phi(phi(kappa))
///                               - e^{a^2/2} Phi(phi(kappa) - a) ],
/// rearranged into the stable two-positive-term form
///   Phi(a - phi(kappa)) + exp(a phi(kappa) - a^2/2 + log Phi(phi(kappa))).
double exp_cdf_direct(const ExpParams& p, double kappa);

/// Exponential-family cdf through the exponentially modified Gaussian
/// reflection F(kappa) = 1 - F_EMG(-kappa) with Gaussian component
/// N(0, sigma_v^2) and rate lambda. The default exponential method.
double exp_cdf_emg(const ExpParams& p, double kappa);

/// cdf of the EMG distribution itself (sum of N(0, sigma^2) and a rate-lambda
/// exponential), used by exp_cdf_emg and exposed for testing.
double emg_cdf(double x, double sigma, double lambda);

/// Orientation- and method-dispatching front ends.
double cdf(const TruncNormalParams& p, double kappa,
           Orientation orientation = Orientation::production,
           TnMethod method = TnMethod::bvn);
double cdf(const ExpParams& p, double kappa,
           Orientation orientation = Orientation::production,
           ExpMethod method = ExpMethod::emg);

} // namespace sfcdf
