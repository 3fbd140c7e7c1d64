#include "hds/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hds/error.hpp"

namespace hds {

WeightedSample apply_gaussian_weights(const SampleMatrix& initial, const GaussianWeightSpec& spec,
                                      const Bounds& bounds, RngStream& rng) {
  const std::size_t n = initial.rows();
  const std::size_t dims = initial.cols();
  if (spec.mean.size() != dims || spec.stddev.size() != dims) {
    throw ConfigError("gaussian weights: mean and stddev need " + std::to_string(dims) + " entries");
  }
  if (bounds.dims() != dims) throw ConfigError("gaussian weights: bounds dimension mismatch");
  for (std::size_t d = 0; d < dims; ++d) {
    if (!(spec.stddev[d] > 0.0)) throw ConfigError("gaussian weights: stddev must be > 0");
    if (!std::isfinite(spec.mean[d])) throw ConfigError("gaussian weights: mean must be finite");
  }
  if (n == 0) return {initial, false};

  std::vector<double> center(dims);
  std::vector<double> spread(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    center[d] = (spec.mean[d] - bounds.lower()[d]) / bounds.range(d);
    spread[d] = spec.stddev[d] / bounds.range(d);
  }

  std::vector<double> log_w(n);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      const double z = (initial(i, d) - center[d]) / spread[d];
      acc -= 0.5 * z * z;
    }
    log_w[i] = acc;
    if (acc > max_log) max_log = acc;
  }
  if (!std::isfinite(max_log)) return {initial, true};

  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::exp(log_w[i] - max_log);
    cumulative[i] = total;
  }
  if (!(total > 0.0) || !std::isfinite(total)) return {initial, true};

  SampleMatrix out(n, dims, initial.frame());
  const double step = total / static_cast<double>(n);
  double position = rng.uniform() * step;
  std::size_t source = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (source + 1 < n && cumulative[source] <= position) ++source;
    std::copy(initial.row(source).begin(), initial.row(source).end(), out.row(i).begin());
    position += step;
  }
  return {std::move(out), false};
}

}  // namespace hds
