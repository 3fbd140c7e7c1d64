#include "hds/functions.hpp"

#include <cmath>
#include <numbers>

#include "hds/error.hpp"
#include "hds/rng.hpp"

namespace hds {
namespace {

constexpr std::uint64_t kDataSeed = 20170;

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  const double value = -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
  return std::max(0.0, value);
}

double griewank(std::span<const double> x) {
  double s = 0.0;
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i] / 4000.0;
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return s - p + 1.0;
}

double zakharov(std::span<const double> x) {
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s1 += x[i] * x[i];
    s2 += 0.5 * static_cast<double>(i + 1) * x[i];
  }
  const double s2sq = s2 * s2;
  return s1 + s2sq + s2sq * s2sq;
}

double schwefel_2_21(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> make_shift(FunctionId id, std::size_t dims) {
  RngStream rng(kDataSeed, std::string("shift:") + std::string(to_string(id)) + ":" + std::to_string(dims));
  std::vector<double> shift(dims);
  for (double& v : shift) v = rng.uniform(-80.0, 80.0);
  return shift;
}

// Orthogonal matrix from modified Gram-Schmidt on a Gaussian matrix.
std::vector<double> make_rotation(FunctionId id, std::size_t dims) {
  RngStream rng(kDataSeed, std::string("rotation:") + std::string(to_string(id)) + ":" + std::to_string(dims));
  std::vector<double> q(dims * dims);
  for (double& v : q) v = rng.normal();
  for (std::size_t i = 0; i < dims; ++i) {
    double* row = q.data() + i * dims;
    for (std::size_t j = 0; j < i; ++j) {
      const double* prev = q.data() + j * dims;
      double dot = 0.0;
      for (std::size_t k = 0; k < dims; ++k) dot += row[k] * prev[k];
      for (std::size_t k = 0; k < dims; ++k) row[k] -= dot * prev[k];
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < dims; ++k) norm += row[k] * row[k];
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dims; ++k) row[k] /= norm;
  }
  return q;
}

}  // namespace

std::string_view to_string(FunctionId id) {
  switch (id) {
    case FunctionId::Sphere: return "sphere";
    case FunctionId::Rastrigin: return "rastrigin";
    case FunctionId::Rosenbrock: return "rosenbrock";
    case FunctionId::Ackley: return "ackley";
    case FunctionId::Griewank: return "griewank";
    case FunctionId::Zakharov: return "zakharov";
    case FunctionId::Schwefel221: return "schwefel_2_21";
    case FunctionId::ShiftedSphere: return "shifted_sphere";
    case FunctionId::ShiftedRotatedRastrigin: return "shifted_rotated_rastrigin";
    case FunctionId::ShiftedRastrigin: return "shifted_rastrigin";
    case FunctionId::ShiftedRosenbrock: return "shifted_rosenbrock";
    case FunctionId::ShiftedAckley: return "shifted_ackley";
    case FunctionId::ShiftedGriewank: return "shifted_griewank";
    case FunctionId::ShiftedZakharov: return "shifted_zakharov";
    case FunctionId::ShiftedSchwefel221: return "shifted_schwefel_2_21";
  }
  return "unknown";
}

const std::vector<FunctionId>& all_functions() {
  static const std::vector<FunctionId> ids = {
      FunctionId::Sphere,      FunctionId::Rastrigin,     FunctionId::Rosenbrock,
      FunctionId::Ackley,      FunctionId::Griewank,      FunctionId::Zakharov,
      FunctionId::Schwefel221, FunctionId::ShiftedSphere, FunctionId::ShiftedRotatedRastrigin,
      FunctionId::ShiftedRastrigin, FunctionId::ShiftedRosenbrock, FunctionId::ShiftedAckley,
      FunctionId::ShiftedGriewank, FunctionId::ShiftedZakharov, FunctionId::ShiftedSchwefel221};
  return ids;
}

const std::vector<FunctionId>& shifted_functions() {
  static const std::vector<FunctionId> ids = {
      FunctionId::ShiftedSphere,      FunctionId::ShiftedRastrigin, FunctionId::ShiftedRosenbrock,
      FunctionId::ShiftedAckley,      FunctionId::ShiftedGriewank,  FunctionId::ShiftedZakharov,
      FunctionId::ShiftedSchwefel221, FunctionId::ShiftedRotatedRastrigin};
  return ids;
}

FunctionId parse_function(std::string_view name) {
  for (FunctionId id : all_functions()) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown function id '" + std::string(name) + "'");
}

BenchmarkFunction::BenchmarkFunction(FunctionId id, std::size_t dims) : id_(id), dims_(dims) {
  if (dims == 0) throw ConfigError("benchmark function: dims must be >= 1");
  argmin_.assign(dims, 0.0);
  switch (id) {
    case FunctionId::Rosenbrock:
      argmin_.assign(dims, 1.0);
      break;
    case FunctionId::ShiftedSphere:
    case FunctionId::ShiftedRastrigin:
    case FunctionId::ShiftedRosenbrock:
    case FunctionId::ShiftedAckley:
    case FunctionId::ShiftedGriewank:
    case FunctionId::ShiftedZakharov:
    case FunctionId::ShiftedSchwefel221:
      shift_ = make_shift(id, dims);
      argmin_ = shift_;
      break;
    case FunctionId::ShiftedRotatedRastrigin:
      shift_ = make_shift(id, dims);
      rotation_ = make_rotation(id, dims);
      argmin_ = shift_;
      break;
    default:
      break;
  }
}

double BenchmarkFunction::operator()(std::span<const double> x) const {
  if (x.size() != dims_) throw ConfigError("benchmark function: point dimension mismatch");
  std::vector<double> z;
  std::span<const double> arg = x;
  if (!shift_.empty()) {
    std::vector<double> shifted(dims_);
    for (std::size_t i = 0; i < dims_; ++i) shifted[i] = x[i] - shift_[i];
    if (!rotation_.empty()) {
      z.assign(dims_, 0.0);
      for (std::size_t r = 0; r < dims_; ++r) {
        const double* row = rotation_.data() + r * dims_;
        double s = 0.0;
        for (std::size_t k = 0; k < dims_; ++k) s += row[k] * shifted[k];
        z[r] = s;
      }
    } else {
      z = std::move(shifted);
    }
    arg = z;
  }
  switch (id_) {
    case FunctionId::Sphere:
    case FunctionId::ShiftedSphere: return sphere(arg);
    case FunctionId::Rastrigin:
    case FunctionId::ShiftedRastrigin:
    case FunctionId::ShiftedRotatedRastrigin: return rastrigin(arg);
    case FunctionId::Rosenbrock: return rosenbrock(arg);
    case FunctionId::ShiftedRosenbrock: {
      // Moves the (1, ..., 1) optimum onto the shift.
      std::vector<double> w(arg.begin(), arg.end());
      for (double& v : w) v += 1.0;
      return rosenbrock(w);
    }
    case FunctionId::Ackley:
    case FunctionId::ShiftedAckley: return ackley(arg);
    case FunctionId::Griewank:
    case FunctionId::ShiftedGriewank: return griewank(arg);
    case FunctionId::Zakharov:
    case FunctionId::ShiftedZakharov: return zakharov(arg);
    case FunctionId::Schwefel221:
    case FunctionId::ShiftedSchwefel221: return schwefel_2_21(arg);
  }
  return 0.0;
}

double evaluate_function(FunctionId id, std::span<const double> x) {
  return BenchmarkFunction(id, x.size())(x);
}

}  // namespace hds
