#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace qamc {

/// SplitMix64 finaliser applied to `state` after a golden-ratio increment.
std::uint64_t splitmix64(std::uint64_t& state);

/// Hash of an ordered tuple of words, used to key independent streams
/// (e.g. seed, sample size, replication index, retry attempt).
std::uint64_t stream_key(std::initializer_list<std::uint64_t> words);

/// xoshiro256** seeded through SplitMix64. Satisfies
/// UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open();

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace qamc
