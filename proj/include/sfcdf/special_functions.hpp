#pragma once

namespace sfcdf {

/// Standard normal density phi(x). Returns 0 at +/-infinity; underflows to 0
/// for |x| beyond roughly 38.6.
double std_normal_pdf(double x);

/// Standard normal distribution function Phi(x), evaluated through the
/// complementary error function so lower-tail values stay relatively
/// accurate down to the smallest normalized doubles.
double std_normal_cdf(double x);

/// log(Phi(x)) without underflow. Uses log/log1p of the cdf in the central
/// region and the Mills-ratio asymptotic expansion below x = -10, so the
/// result is finite and relatively accurate for arbitrarily negative x.
double log_std_normal_cdf(double x);

/// Owen's T function
///   T(h, g) = 1/(2 pi) * int_0^g exp(-h^2 (1+t^2)/2) / (1+t^2) dt.
///
/// Region-dependent hybrid evaluation (truncated series, repeated
/// integration, fixed Gauss quadrature); arguments are first mapped into the
/// accurate region with the symmetry identities T(-h,g) = T(h,g),
/// T(h,-g) = -T(h,g) and the inversion identity in g. g = +/-inf yields the
/// limit sign(g) * (1 - Phi(|h|)) / 2; h = +/-inf yields 0.
double owen_t(double h, double g);

/// Standard bivariate normal cdf P(X <= h, Y <= k) with correlation rho.
///
/// Gauss-Legendre integration over the correlation (with a transformed
/// branch for |rho| > 0.925); min(h,k) <= -8 switches to a conditional
/// evaluation that preserves relative accuracy arbitrarily deep in the tail.
/// rho = +/-1 returns the comonotone/antithetic exact value. h, k may be
/// +/-inf. Throws std::domain_error if rho is outside [-1, 1] or NaN.
double bvn_cdf(double h, double k, double rho);

namespace detail {

/// phi(x) / Phi(x), the inverse Mills ratio of the lower tail; stable for
/// arbitrarily negative x.
double normal_mills_ratio(double x);

/// P(Y <= k | X <= h) for a standard bivariate normal pair with correlation
/// rho in (-1, 1), evaluated as a one-dimensional log-space integral over the
/// conditioning tail. Requires h < 0; keeps full relative accuracy however
/// negative h is, where forming P(X <= h, Y <= k) itself would lose all
/// precision to the common exp(-h^2/2) scale.
double bvn_cdf_conditional(double h, double k, double rho);

} // namespace detail

} // namespace sfcdf
