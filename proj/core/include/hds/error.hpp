#pragma once

#include <stdexcept>
#include <string>

namespace hds {

/// Invalid configuration or argument (bad bounds, k > N, unknown function id, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Persistent state that cannot be used (mismatched resume, corrupt records).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hds
