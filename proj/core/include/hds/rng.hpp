#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace hds {

/// Seeded pseudo-random stream.
///
/// Draws are produced from a 64-bit Mersenne Twister whose output is fixed by
/// the C++ standard; uniform and normal variates are derived here rather than
/// through <random> distributions, so a seed reproduces the same sequence on
/// every conforming platform. Independent sub-streams are keyed by a label.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);
  RngStream(std::uint64_t seed, std::string_view label);

  /// Child stream keyed by (this stream's key, label). Does not consume draws.
  RngStream derive(std::string_view label) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Unbiased integer in [0, n).
  std::size_t index(std::size_t n);
  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  RngStream(std::uint64_t seed, std::uint64_t key);

  std::uint64_t seed_;
  std::uint64_t key_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix_key(std::uint64_t key, std::string_view label);

}  // namespace hds
