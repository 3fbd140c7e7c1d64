#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hds/bounds.hpp"

namespace hds {

enum class FunctionId {
  Sphere,
  Rastrigin,
  Rosenbrock,
  Ackley,
  Griewank,
  Zakharov,
  Schwefel221,
  ShiftedSphere,
  ShiftedRotatedRastrigin,
  ShiftedRastrigin,
  ShiftedRosenbrock,
  ShiftedAckley,
  ShiftedGriewank,
  ShiftedZakharov,
  ShiftedSchwefel221,
};

std::string_view to_string(FunctionId id);
/// Throws ConfigError for an unknown name.
FunctionId parse_function(std::string_view name);
const std::vector<FunctionId>& all_functions();
/// Functions whose optimum is moved off the box centre by a seeded shift.
const std::vector<FunctionId>& shifted_functions();

/// A scalable test objective on [-100, 100]^D with known minimum value 0.
/// Shift vectors and rotations are fixed per (function, D).
class BenchmarkFunction {
 public:
  BenchmarkFunction(FunctionId id, std::size_t dims);

  FunctionId id() const { return id_; }
  std::string_view name() const { return to_string(id_); }
  std::size_t dims() const { return dims_; }
  double optimum_value() const { return 0.0; }
  const std::vector<double>& optimum_location() const { return argmin_; }
  Bounds bounds() const { return Bounds::uniform(dims_, -100.0, 100.0); }

  double operator()(std::span<const double> x) const;

 private:
  FunctionId id_;
  std::size_t dims_;
  std::vector<double> shift_;     // empty when unshifted
  std::vector<double> rotation_;  // D x D, empty when unrotated
  std::vector<double> argmin_;
};

/// Evaluates function `id` at x (a fresh BenchmarkFunction of dimension x.size()).
double evaluate_function(FunctionId id, std::span<const double> x);

}  // namespace hds
