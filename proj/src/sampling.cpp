#include "sfcdf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfcdf {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528677;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

} // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

StreamSeeds derive_streams(std::uint64_t seed) {
  std::uint64_t state = seed;
  StreamSeeds s;
  s.v_stream = splitmix64_next(state);
  s.u_stream = splitmix64_next(state);
  return s;
}

std::uint64_t derive_cell_seed(std::uint64_t seed, std::size_t cell_index) {
  std::uint64_t state = seed;
  std::uint64_t out = 0;
  for (std::size_t i = 0; i <= cell_index; ++i) out = splitmix64_next(state);
  return out;
}

std::vector<double> sample_normal(double sigma, std::size_t n, std::uint64_t seed) {
  require(std::isfinite(sigma) && sigma > 0.0, "sample_normal: sigma must be positive");
  std::vector<double> out;
  out.reserve(n);
  UniformSource rng(seed);
  while (out.size() < n) {
    const double u1 = rng.next_open_below();
    const double u2 = rng.next();
    const double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(sigma * r * std::cos(kTwoPi * u2));
    if (out.size() < n) out.push_back(sigma * r * std::sin(kTwoPi * u2));
  }
  return out;
}

std::vector<double> sample_exponential(double lambda, std::size_t n, std::uint64_t seed) {
  require(std::isfinite(lambda) && lambda > 0.0, "sample_exponential: lambda must be positive");
  std::vector<double> out;
  out.reserve(n);
  UniformSource rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(-std::log1p(-rng.next()) / lambda);
  }
  return out;
}

std::vector<double> sample_trunc_normal(double mu, double sigma, std::size_t n,
                                        std::uint64_t seed) {
  require(std::isfinite(sigma) && sigma > 0.0, "sample_trunc_normal: sigma must be positive");
  require(std::isfinite(mu), "sample_trunc_normal: mu must be finite");
  const double alpha = -mu / sigma; // standardized lower bound
  std::vector<double> out;
  out.reserve(n);
  UniformSource rng(seed);
  if (alpha < 2.0) {
    // plain rejection of normal candidates
    while (out.size() < n) {
      const double u1 = rng.next_open_below();
      const double u2 = rng.next();
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double z1 = r * std::cos(kTwoPi * u2);
      const double z2 = r * std::sin(kTwoPi * u2);
      if (z1 >= alpha) out.push_back(mu + sigma * z1);
      if (out.size() < n && z2 >= alpha) out.push_back(mu + sigma * z2);
    }
  } else {
    // shifted-exponential proposal (Robert-style); acceptance tends to 1 as
    // alpha grows, so deep truncation stays cheap
    const double rate = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
    while (out.size() < n) {
      const double z = alpha - std::log1p(-rng.next()) / rate;
      const double dz = z - rate;
      if (rng.next() <= std::exp(-0.5 * dz * dz)) out.push_back(mu + sigma * z);
    }
  }
  return out;
}

double sorted_quantile(std::span<const double> sorted, double p) {
  require(!sorted.empty(), "empirical_quantile: empty sample");
  require(p > 0.0 && p < 1.0, "empirical_quantile: p must lie in (0, 1)");
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

double empirical_quantile(std::span<const double> draws, double p) {
  require(!draws.empty(), "empirical_quantile: empty sample");
  require(p > 0.0 && p < 1.0, "empirical_quantile: p must lie in (0, 1)");
  std::vector<double> tmp(draws.begin(), draws.end());
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(tmp.size())));
  rank = std::clamp<std::size_t>(rank, 1, tmp.size());
  std::nth_element(tmp.begin(), tmp.begin() + (rank - 1), tmp.end());
  return tmp[rank - 1];
}

} // namespace sfcdf
