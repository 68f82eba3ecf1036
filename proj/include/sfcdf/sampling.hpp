#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sfcdf {

/// splitmix64 step; used to derive sub-stream seeds from a master seed.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Stream derivation rule for Monte-Carlo runs: a splitmix64 generator is
/// seeded with the master seed; its first output seeds the noise (v) stream,
/// its second the inefficiency (u) stream. Per-cell seeds in grid runs are
/// the master seed advanced by splitmix64 `cell_index + 1` times.
struct StreamSeeds {
  std::uint64_t v_stream;
  std::uint64_t u_stream;
};
StreamSeeds derive_streams(std::uint64_t seed);
std::uint64_t derive_cell_seed(std::uint64_t seed, std::size_t cell_index);

/// Deterministic uniform source: mt19937_64 (bit-exact sequence fixed by the
/// standard) mapped to doubles with the top 53 bits.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// in [0, 1)
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// in (0, 1]
  double next_open_below() { return 1.0 - next(); }

 private:
  std::mt19937_64 engine_;
};

/// n iid N(0, sigma^2) draws (Box-Muller; the pair sequence is part of the
/// determinism contract). Throws std::invalid_argument for sigma <= 0.
std::vector<double> sample_normal(double sigma, std::size_t n, std::uint64_t seed);

/// n iid rate-lambda exponential draws by inverse transform.
std::vector<double> sample_exponential(double lambda, std::size_t n, std::uint64_t seed);

/// n iid draws from TN(mu, sigma^2, 0, inf). Plain rejection of normal
/// candidates while mu/sigma > -2; at or below that, a shifted-exponential
/// proposal tail sampler whose acceptance rate increases toward 1 as
/// mu/sigma falls, so the extreme grid corner mu/sigma = -32 stays cheap.
std::vector<double> sample_trunc_normal(double mu, double sigma, std::size_t n,
                                        std::uint64_t seed);

/// Type-1 (inverse empirical cdf) quantile: the ceil(p*n)-th smallest draw.
/// Throws std::invalid_argument on an empty sample or p outside (0, 1).
double empirical_quantile(std::span<const double> draws, double p);

/// Same, assuming `sorted` is already ascending.
double sorted_quantile(std::span<const double> sorted, double p);

} // namespace sfcdf
