#pragma once
// Deterministic random sampling.  One Rng per run; sub-runs (sweep points,
// Monte Carlo batches) get decorrelated seeds through splitmix64 so that
// results are reproducible and independent of execution order.

#include <cstdint>
#include <random>

#include "cogrelay/params.hpp"

namespace cogrelay {

inline constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kSeedStride;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for the i-th sub-run derived from a base seed.
inline std::uint64_t subrun_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + (index + 1) * kSeedStride);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // Expand the user seed so nearby seeds give unrelated streams.
    std::uint64_t s = seed;
    std::seed_seq seq{static_cast<std::uint32_t>(s = splitmix64(s)),
                      static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(s = splitmix64(s)),
                      static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(s = splitmix64(s)),
                      static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(s = splitmix64(s)),
                      static_cast<std::uint32_t>(s >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF exponential draw; mean 0 is allowed and yields 0.
  double exponential(double mean) {
    return -mean * std::log1p(-uniform01());
  }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Fixed draw order (h_p, then h_ps[0..N), h_r[0..N), h_s[0..N)) so a given
// seed reproduces the same fading history regardless of what the caller does
// with the sample.
inline void sample_channels(Rng& rng, const SystemParams& p, ChannelSample& out) {
  const std::size_t n = static_cast<std::size_t>(p.n_su);
  out.h_ps.resize(n);
  out.h_r.resize(n);
  out.h_s.resize(n);
  out.h_p = rng.exponential(p.sigma_p_sq);
  for (std::size_t i = 0; i < n; ++i) out.h_ps[i] = rng.exponential(SystemParams::sigma_sq);
  for (std::size_t i = 0; i < n; ++i) out.h_r[i] = rng.exponential(SystemParams::sigma_sq);
  for (std::size_t i = 0; i < n; ++i) out.h_s[i] = rng.exponential(SystemParams::sigma_sq);
}

inline ChannelSample sample_channels(Rng& rng, const SystemParams& p) {
  ChannelSample s;
  sample_channels(rng, p, s);
  return s;
}

}  // namespace cogrelay
