#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfcdf/composed_error.hpp"

namespace sfcdf {

/// One Monte-Carlo accuracy measurement: the analytic cdf evaluated at the
/// empirical p-quantile of simulated composed errors, and |F(Q*(p)) - p|.
struct AccuracyRecord {
  double p = 0.0;
  double q_star = 0.0;
  double analytic = 0.0;
  double abs_error = 0.0;
};

/// Draws n composed errors eps = v - u from independent v/u streams derived
/// from `seed` (see derive_streams), then scores the requested analytic
/// method at every empirical quantile in p_list. Requires n >= 1000 and
/// every p strictly inside (0, 1).
std::vector<AccuracyRecord> mc_accuracy(const TruncNormalParams& params,
                                        std::span<const double> p_list,
                                        std::size_t n, std::uint64_t seed,
                                        TnMethod method = TnMethod::bvn);
std::vector<AccuracyRecord> mc_accuracy(const ExpParams& params,
                                        std::span<const double> p_list,
                                        std::size_t n, std::uint64_t seed,
                                        ExpMethod method = ExpMethod::emg);

} // namespace sfcdf
