#pragma once

#include <stdexcept>
#include <string>

namespace ternwave {

/// Malformed argument: non-finite angle, wrong length, unknown enum value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Signal or plane below the minimum length a transform can handle.
class TooShort : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Requested quality cannot be reached even when every coefficient is kept.
class UnattainableQuality : public std::runtime_error {
 public:
  UnattainableQuality(const std::string& what, double best)
      : std::runtime_error(what), best_(best) {}
  double best() const noexcept { return best_; }

 private:
  double best_;
};

/// Angle solver ran out of iterations.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Image file could not be decoded.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent benchmark configuration (bad flag value, nothing selected).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Dataset missing, empty, or without a single decodable image.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ternwave
