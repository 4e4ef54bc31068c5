#pragma once

// Seeded random streams for Monte Carlo paths.
//
// Every path owns several independent streams (environment per arm, policy,
// action-set generation). A stream is identified by (master_seed, path, tag,
// index) and its engine seed is a SplitMix64 hash of that tuple, so any path
// can be replayed in isolation and no two paths share state.

#include <cstdint>
#include <limits>
#include <random>

namespace lighttail {

/// SplitMix64 finalizer; also the seeding routine recommended for xoshiro.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  friend bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

enum class StreamTag : std::uint64_t {
  Environment = 1,
  Policy = 2,
  ActionSet = 3,
};

/// Child seed for stream (tag, index) of path `path` under `master_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t path,
                                    StreamTag tag, std::uint64_t index = 0) noexcept {
  std::uint64_t state = master_seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ path;
  h = splitmix64(state);
  state = h ^ static_cast<std::uint64_t>(tag);
  h = splitmix64(state);
  state = h ^ index;
  return splitmix64(state);
}

/// One random stream: engine plus the distributions drawn from it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master_seed, std::uint64_t path, StreamTag tag, std::uint64_t index = 0)
      : engine_(derive_seed(master_seed, path, tag, index)) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  Xoshiro256pp& engine() noexcept { return engine_; }

 private:
  Xoshiro256pp engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace lighttail
