#include "sfcdf/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sfcdf/sampling.hpp"

namespace sfcdf {

namespace {

void check_inputs(std::span<const double> p_list, std::size_t n) {
  if (n < 1000) throw std::invalid_argument("mc_accuracy: n must be at least 1000");
  for (double p : p_list) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("mc_accuracy: every p must lie in (0, 1)");
    }
  }
}

template <class SampleU, class Analytic>
std::vector<AccuracyRecord> mc_impl(std::span<const double> p_list, std::size_t n,
                                    std::uint64_t seed, double sigma_v, SampleU&& sample_u,
                                    Analytic&& analytic) {
  const StreamSeeds streams = derive_streams(seed);
  const std::vector<double> v = sample_normal(sigma_v, n, streams.v_stream);
  const std::vector<double> u = sample_u(streams.u_stream);
  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = v[i] - u[i];
  std::sort(eps.begin(), eps.end());

  std::vector<AccuracyRecord> records;
  records.reserve(p_list.size());
  for (double p : p_list) {
    AccuracyRecord r;
    r.p = p;
    r.q_star = sorted_quantile(eps, p);
    r.analytic = analytic(r.q_star);
    r.abs_error = std::fabs(r.analytic - p);
    records.push_back(r);
  }
  return records;
}

} // namespace

std::vector<AccuracyRecord> mc_accuracy(const TruncNormalParams& params,
                                        std::span<const double> p_list, std::size_t n,
                                        std::uint64_t seed, TnMethod method) {
  check_inputs(p_list, n);
  return mc_impl(
      p_list, n, seed, params.sigma_v(),
      [&](std::uint64_t s) { return sample_trunc_normal(params.mu(), params.sigma_u(), n, s); },
      [&](double q) { return cdf(params, q, Orientation::production, method); });
}

std::vector<AccuracyRecord> mc_accuracy(const ExpParams& params, std::span<const double> p_list,
                                        std::size_t n, std::uint64_t seed, ExpMethod method) {
  check_inputs(p_list, n);
  return mc_impl(
      p_list, n, seed, params.sigma_v(),
      [&](std::uint64_t s) { return sample_exponential(params.lambda(), n, s); },
      [&](double q) { return cdf(params, q, Orientation::production, method); });
}

} // namespace sfcdf
