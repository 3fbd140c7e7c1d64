#include "hds/sobol.hpp"

#include <bit>
#include <string>

#include "hds/error.hpp"

namespace hds {
namespace detail {
extern const std::uint32_t kJoeKuoRaw[];
extern const std::size_t kJoeKuoRawSize;
extern const std::size_t kJoeKuoRows;
}  // namespace detail

namespace {

struct DirectionRow {
  std::uint32_t degree;
  std::uint32_t coefficients;
  std::span<const std::uint32_t> initial;
};

const std::vector<DirectionRow>& direction_rows() {
  static const std::vector<DirectionRow> rows = [] {
    std::vector<DirectionRow> out;
    out.reserve(detail::kJoeKuoRows);
    std::size_t pos = 0;
    while (pos < detail::kJoeKuoRawSize) {
      // d s a m_1 .. m_s
      const std::uint32_t degree = detail::kJoeKuoRaw[pos + 1];
      const std::uint32_t coefficients = detail::kJoeKuoRaw[pos + 2];
      out.push_back({degree, coefficients, {detail::kJoeKuoRaw + pos + 3, degree}});
      pos += 3 + degree;
    }
    return out;
  }();
  return rows;
}

}  // namespace

std::size_t SobolEngine::max_dims() { return direction_rows().size() + 1; }

SobolEngine::SobolEngine(std::size_t dims) : dims_(dims) {
  if (dims == 0) throw ConfigError("SobolEngine: dims must be >= 1");
  if (dims > max_dims()) {
    throw ConfigError("SobolEngine: dims " + std::to_string(dims) + " exceeds supported maximum " +
                      std::to_string(max_dims()));
  }
  directions_.assign(dims * kBits, 0);
  state_.assign(dims, 0);

  // First dimension: van der Corput, all m_i = 1.
  for (int b = 0; b < kBits; ++b) directions_[b] = std::uint32_t{1} << (kBits - 1 - b);

  const auto& rows = direction_rows();
  for (std::size_t d = 1; d < dims; ++d) {
    const DirectionRow& row = rows[d - 1];
    std::uint32_t* v = directions_.data() + d * kBits;
    const int s = static_cast<int>(row.degree);
    for (int b = 0; b < kBits && b < s; ++b) {
      v[b] = row.initial[b] << (kBits - 1 - b);
    }
    for (int b = s; b < kBits; ++b) {
      std::uint32_t value = v[b - s] ^ (v[b - s] >> s);
      for (int k = 1; k < s; ++k) {
        if ((row.coefficients >> (s - 1 - k)) & 1U) value ^= v[b - k];
      }
      v[b] = value;
    }
  }
}

void SobolEngine::check_capacity(std::uint64_t count) const {
  if (count >= kMaxIndex || index_ + count >= kMaxIndex) {
    throw ConfigError("SobolEngine: sequence index overflow (index " + std::to_string(index_) +
                      " + " + std::to_string(count) + ")");
  }
}

void SobolEngine::next(std::span<double> out) {
  check_capacity(1);
  constexpr double scale = 0x1.0p-32;
  for (std::size_t d = 0; d < dims_; ++d) out[d] = static_cast<double>(state_[d]) * scale;
  // Gray-code update: flip the direction number of the lowest zero bit of index.
  const int bit = std::countr_one(index_);
  for (std::size_t d = 0; d < dims_; ++d) state_[d] ^= directions_[d * kBits + bit];
  ++index_;
}

SampleMatrix SobolEngine::draw(std::size_t count) {
  if (count == 0) throw ConfigError("sobol_points: count must be >= 1");
  check_capacity(count);
  SampleMatrix out(count, dims_, Frame::UnitCube);
  for (std::size_t i = 0; i < count; ++i) next(out.row(i));
  return out;
}

void SobolEngine::skip(std::uint64_t count) {
  check_capacity(count);
  const std::uint64_t target = index_ + count;
  // The Gray-code state of index n is the XOR of direction numbers over the bits of n ^ (n >> 1).
  const std::uint64_t gray = target ^ (target >> 1);
  for (std::size_t d = 0; d < dims_; ++d) {
    std::uint32_t value = 0;
    for (int b = 0; b < kBits; ++b) {
      if ((gray >> b) & 1U) value ^= directions_[d * kBits + b];
    }
    state_[d] = value;
  }
  index_ = target;
}

SampleMatrix sobol_points(SobolEngine& engine, std::size_t count) { return engine.draw(count); }

std::size_t initial_sample_count(std::size_t dims, int cap_exponent) {
  if (dims == 0) throw ConfigError("initial_sample_count: dims must be >= 1");
  if (cap_exponent < 0 || cap_exponent > 30) {
    throw ConfigError("initial_sample_count: cap_exponent must be in [0, 30]");
  }
  const std::size_t cap = std::size_t{1} << cap_exponent;
  const std::size_t target = 200 * dims;
  if (target >= cap) return cap;
  return std::bit_ceil(target);
}

}  // namespace hds
