#pragma once

#include <stdexcept>

namespace rwrs {

/// Invalid parameters or configuration. The CLI maps it to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request whose buffers would exceed the configured memory cap.
class MemoryCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The long-run variance estimate is negative, so the normalization
/// constant of the limit does not exist.
class NegativeLongRunVariance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rwrs
