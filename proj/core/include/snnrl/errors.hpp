#pragma once

#include <stdexcept>
#include <string>

namespace snnrl {

/// Invalid configuration: schema violation, out-of-range hyperparameter,
/// topology mismatch. Aborts the run before it starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed runtime input: non-finite observation, bad action index.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite quantity was produced while learning. Aborts only the
/// offending run; the campaign reports it and continues.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting results.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snnrl
