#include "densecomb/random_tiling.hpp"

#include <algorithm>
#include <cmath>

#include "densecomb/accum.hpp"
#include "densecomb/errors.hpp"
#include "densecomb/numerics.hpp"

namespace densecomb {

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

namespace {

// splitmix64: the per-sample stream generator and the seed-splitting rule.
// Fully specified integer arithmetic, so streams are identical on every
// platform and independent of the standard library.
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_double() {  // uniform in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix mix{master ^ (0xd1342543de82ef95ULL * (index + 1))};
  return mix.next();
}

void fill_tiles(std::vector<std::uint8_t>& tiles, std::size_t n, double p_u,
                std::uint64_t stream_seed, TilingSampler sampler) {
  tiles.resize(n);
  SplitMix rng{stream_seed};
  if (sampler == TilingSampler::bernoulli) {
    for (std::size_t i = 0; i < n; ++i) tiles[i] = rng.next_double() < p_u ? 1 : 0;
    return;
  }
  const std::size_t n_u =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(p_u * n)));
  std::fill(tiles.begin(), tiles.begin() + static_cast<std::ptrdiff_t>(n_u), 1);
  std::fill(tiles.begin() + static_cast<std::ptrdiff_t>(n_u), tiles.end(), 0);
  for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
    const std::size_t j = static_cast<std::size_t>(rng.next() % i);
    std::swap(tiles[i - 1], tiles[j]);
  }
}

}  // namespace

TilingSample sample_tiling(std::size_t n_tiles, double p_u, std::uint64_t seed,
                           TilingSampler sampler) {
  if (n_tiles < 1) throw ValidationError("sample_tiling: need at least one tile");
  if (!(p_u > 0.0) || !(p_u < 1.0)) {
    if (!(p_u == 0.0 || p_u == 1.0))  // exact endpoints allowed for forced sequences
      throw ValidationError("sample_tiling: p_u must lie in [0, 1]");
  }
  TilingSample s;
  s.p_u = p_u;
  s.seed = seed;
  fill_tiles(s.tiles, n_tiles, p_u, derive_seed(seed, 0), sampler);
  return s;
}

std::vector<double> internal_walk(const TilingSample& sample) {
  const double tau = golden_ratio();
  std::vector<double> stars(sample.tiles.size() + 1);
  stars[0] = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < sample.tiles.size(); ++i) {
    acc += sample.tiles[i] ? 1.0 : 1.0 - tau;
    stars[i + 1] = acc;
  }
  return stars;
}

Histogram averaged_histogram(std::size_t n_samples, std::size_t n_tiles, double p_u,
                             std::size_t bins, std::uint64_t seed, TilingSampler sampler) {
  if (n_samples < 1 || n_tiles < 1 || bins < 1)
    throw ValidationError("averaged_histogram: sizes must be >= 1");
  const double tau = golden_ratio();
  const double drift = p_u * 1.0 + (1.0 - p_u) * (1.0 - tau);
  const double sigma_pred = 0.5 * std::sqrt(2.0 * static_cast<double>(n_tiles) / tau);
  const double center = drift * static_cast<double>(n_tiles) / 2.0;

  Histogram h;
  h.lo = center - 6.0 * sigma_pred;
  h.bin_width = 12.0 * sigma_pred / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  h.n_samples = n_samples;
  h.n_tiles = n_tiles;
  h.p_u = p_u;
  h.seed = seed;
  h.sampler = sampler;
  h.drift_per_tile = drift;

  struct ChunkState {
    std::vector<std::int64_t> counts;
    CompensatedSum sum, sumsq;
    std::int64_t u_tiles = 0;
  };
  std::vector<ChunkState> chunk(kReductionChunks);
  const double lo = h.lo;
  const double inv_width = 1.0 / h.bin_width;
  const std::int64_t last_bin = static_cast<std::int64_t>(bins) - 1;

  for_each_chunk(n_samples, [&](std::size_t b, std::size_t e, std::size_t c) {
    ChunkState st;
    st.counts.assign(bins, 0);
    std::vector<std::uint8_t> tiles;
    for (std::size_t sample = b; sample < e; ++sample) {
      fill_tiles(tiles, n_tiles, p_u, derive_seed(seed, sample), sampler);
      double star = 0.0;
      for (std::size_t j = 0; j <= n_tiles; ++j) {
        if (j > 0) {
          st.u_tiles += tiles[j - 1];
          star += tiles[j - 1] ? 1.0 : 1.0 - tau;
        }
        std::int64_t bin = static_cast<std::int64_t>(std::floor((star - lo) * inv_width));
        bin = std::clamp<std::int64_t>(bin, 0, last_bin);  // edge clamp keeps the mass
        ++st.counts[static_cast<std::size_t>(bin)];
        st.sum.add(star);
        st.sumsq.add(star * star);
      }
    }
    chunk[c] = std::move(st);
  });

  CompensatedSum sum, sumsq;
  std::int64_t u_total = 0;
  for (const auto& st : chunk) {
    if (st.counts.empty()) continue;
    for (std::size_t i = 0; i < bins; ++i) h.counts[i] += st.counts[i];
    sum.merge(st.sum);
    sumsq.merge(st.sumsq);
    u_total += st.u_tiles;
  }

  const double total =
      static_cast<double>(n_samples) * static_cast<double>(n_tiles + 1);
  h.density.resize(bins);
  for (std::size_t i = 0; i < bins; ++i)
    h.density[i] = static_cast<double>(h.counts[i]) / (total * h.bin_width);
  h.empirical_mean = sum.value() / total;
  const double var = std::max(0.0, sumsq.value() / total - h.empirical_mean * h.empirical_mean);
  h.empirical_std = std::sqrt(var);
  h.frequency_u = static_cast<double>(u_total) /
                  (static_cast<double>(n_samples) * static_cast<double>(n_tiles));
  return h;
}

double profile_shape(double z) {
  const double az = std::abs(z);
  return 2.0 * (std::exp(-z * z) / std::sqrt(M_PI) - az * densecomb::erfc(az));
}

double asymptotic_profile(double y, double n_tiles) {
  if (!(n_tiles >= 1.0)) throw ValidationError("asymptotic_profile: N must be >= 1");
  const double scale = std::sqrt(golden_ratio() / (2.0 * n_tiles));
  return scale * profile_shape(y * scale);
}

double profile_distance(const Histogram& h, std::size_t n_tiles) {
  if (h.n_tiles != n_tiles)
    throw ValidationError("profile_distance: histogram was built for a different N (grid mismatch)");
  const double shift = h.empirical_mean;
  CompensatedSum l1;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double model = asymptotic_profile(h.bin_center(i) - shift, static_cast<double>(n_tiles));
    l1.add(std::abs(h.density[i] - model) * h.bin_width);
  }
  return l1.value();
}

double vertex_star_std(std::size_t n_samples, std::size_t n_tiles, double p_u,
                       std::uint64_t seed, TilingSampler sampler) {
  const Histogram h = averaged_histogram(n_samples, n_tiles, p_u, 16, seed, sampler);
  return h.empirical_std;
}

double width_scaling_exponent(const std::vector<std::size_t>& n_list, std::size_t n_samples,
                              double p_u, std::uint64_t seed, TilingSampler sampler) {
  if (n_list.size() < 2)
    throw ValidationError("width_scaling_exponent: need at least two sizes");
  std::vector<double> lx, ly;
  for (std::size_t n : n_list) {
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(vertex_star_std(n_samples, n, p_u, seed, sampler)));
  }
  const std::size_t n = lx.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace densecomb
