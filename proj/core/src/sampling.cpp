#include "hds/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "hds/error.hpp"
#include "hds/special.hpp"

namespace hds {

SampleMatrix marsaglia_unit_directions(std::size_t count, std::size_t dims, RngStream& rng) {
  if (count == 0 || dims == 0) throw ConfigError("marsaglia_unit_directions: count and dims must be >= 1");
  SampleMatrix out(count, dims, Frame::UnitCube);
  for (std::size_t i = 0; i < count; ++i) {
    auto row = out.row(i);
    double norm = 0.0;
    do {
      double sum = 0.0;
      for (double& x : row) {
        x = rng.normal();
        sum += x * x;
      }
      norm = std::sqrt(sum);
    } while (norm == 0.0 || !std::isfinite(norm));
    for (double& x : row) x /= norm;
  }
  return out;
}

namespace {

double clamp_open(double x, double lo, double hi) {
  if (x <= lo) return std::nextafter(lo, hi);
  if (x >= hi) return std::nextafter(hi, lo);
  return x;
}

}  // namespace

double truncated_normal(double center, double stddev, double lo, double hi, RngStream& rng) {
  if (!(stddev > 0.0)) throw ConfigError("truncated_normal: stddev must be > 0");
  if (!(hi > lo)) throw ConfigError("truncated_normal: empty interval");
  const double a = (lo - center) / stddev;
  const double b = (hi - center) / stddev;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    // Vanishing spread: the distribution collapses onto the (clamped) center.
    return clamp_open(center, lo, hi);
  }

  // Upper-tail intervals are mirrored so the CDF differences stay accurate.
  const bool mirrored = a > 0.0;
  const double lo_z = mirrored ? -b : a;
  const double hi_z = mirrored ? -a : b;
  const double p_lo = normal_cdf(lo_z);
  const double p_hi = normal_cdf(hi_z);
  const double acceptance = p_hi - p_lo;

  double z = 0.0;
  if (acceptance >= 0.01) {
    do {
      z = rng.normal();
    } while (z <= lo_z || z >= hi_z);
  } else if (acceptance > 0.0) {
    const double p = p_lo + rng.uniform_open() * acceptance;
    z = std::clamp(normal_quantile(std::clamp(p, 1e-300, 1.0 - 1e-16)), lo_z, hi_z);
  } else {
    // Both CDF values underflowed; the mass sits against the boundary nearest the center.
    z = hi_z;
  }
  if (mirrored) z = -z;
  return clamp_open(center + stddev * z, lo, hi);
}

void truncated_normal_draw(std::span<const double> center, std::span<const double> stddev,
                           RngStream& rng, std::span<double> out) {
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d] = truncated_normal(center[d], stddev[d], 0.0, 1.0, rng);
  }
}

}  // namespace hds
