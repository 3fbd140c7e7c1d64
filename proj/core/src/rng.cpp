#include "hds/rng.hpp"

#include <cmath>
#include <limits>

namespace hds {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix_key(std::uint64_t key, std::string_view label) {
  return splitmix64(splitmix64(key) ^ fnv1a(label));
}

RngStream::RngStream(std::uint64_t seed) : RngStream(seed, splitmix64(seed)) {}

RngStream::RngStream(std::uint64_t seed, std::string_view label)
    : RngStream(seed, mix_key(splitmix64(seed), label)) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t key)
    : seed_(seed), key_(key), engine_(key) {}

RngStream RngStream::derive(std::string_view label) const {
  return RngStream(seed_, mix_key(key_, label));
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  // (k + 0.5) / 2^53 never hits either endpoint.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t RngStream::index(std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::size_t>(draw % range);
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

}  // namespace hds
