#pragma once

#include <cstdint>
#include <vector>

namespace densecomb {

/// How tiles are drawn: i.i.d. Bernoulli per tile (the default ensemble) or a
/// shuffled fixed composition with round(N p_u) short tiles, kept as a
/// sensitivity check.
enum class TilingSampler { bernoulli, fixed_composition };

/// One random tiling realization over the alphabet {u, v}: u is the length-1
/// interval (star step +1), v the length-tau interval (star step 1-tau).
/// Vertex j has integer coordinates (#u, #v) among the first j tiles, so
/// vertex 0 is the origin.
struct TilingSample {
  std::vector<std::uint8_t> tiles;  // 1 = u, 0 = v
  double p_u = 0.0;
  std::uint64_t seed = 0;
};

TilingSample sample_tiling(std::size_t n_tiles, double p_u, std::uint64_t seed,
                           TilingSampler sampler = TilingSampler::bernoulli);

/// Star coordinates of all N+1 vertices: partial sums of steps +1 (u) and
/// 1-tau (v), starting from 0.
std::vector<double> internal_walk(const TilingSample& sample);

/// Binned averaged internal distribution over M independent samples.
/// Bins are uniform over [center - 6 sigma, center + 6 sigma] with
/// sigma = sqrt(2N/tau)/2 and center = drift * N/2 (the predicted drift
/// midpoint); vertices falling outside clamp into the edge bins so the
/// density integrates to exactly 1.
struct Histogram {
  double lo = 0.0;
  double bin_width = 0.0;
  std::vector<std::int64_t> counts;
  std::vector<double> density;  // counts / (M (N+1) bin_width)
  std::size_t n_samples = 0;
  std::size_t n_tiles = 0;
  double p_u = 0.0;
  std::uint64_t seed = 0;
  TilingSampler sampler = TilingSampler::bernoulli;
  double drift_per_tile = 0.0;   // predicted mean star step
  double empirical_mean = 0.0;   // over all binned vertex stars
  double empirical_std = 0.0;
  double frequency_u = 0.0;      // measured share of u tiles
  double bin_center(std::size_t i) const { return lo + (i + 0.5) * bin_width; }
  std::size_t bins() const { return counts.size(); }
};

/// Samples are independent with per-sample seeds derived from (seed, index)
/// by a counter-based splitting rule; the reduction is bit-identical for any
/// worker count.
Histogram averaged_histogram(std::size_t n_samples, std::size_t n_tiles, double p_u,
                             std::size_t bins, std::uint64_t seed,
                             TilingSampler sampler = TilingSampler::bernoulli);

/// The closed-form averaged profile density
/// rho(y) = sqrt(tau/2N) f(y sqrt(tau/2N)),
/// f(z) = 2 (e^{-z^2}/sqrt(pi) - |z| erfc|z|).
double asymptotic_profile(double y, double n_tiles);
double profile_shape(double z);

/// L1 distance between the histogram density and the profile evaluated at
/// bin centers shifted by the histogram's empirical mean.  The histogram
/// must have been built with the same N (grid mismatch otherwise).
double profile_distance(const Histogram& h, std::size_t n_tiles);

/// Standard deviation of all vertex stars over M samples of size N.
double vertex_star_std(std::size_t n_samples, std::size_t n_tiles, double p_u,
                       std::uint64_t seed, TilingSampler sampler = TilingSampler::bernoulli);

/// Least-squares slope of log(std) against log(N) over the given sizes;
/// 1/2 for a diffusive (zero-drift) walk.
double width_scaling_exponent(const std::vector<std::size_t>& n_list, std::size_t n_samples,
                              double p_u, std::uint64_t seed,
                              TilingSampler sampler = TilingSampler::bernoulli);

double golden_ratio();

}  // namespace densecomb
