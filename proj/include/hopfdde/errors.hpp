#pragma once

#include <stdexcept>
#include <string>

namespace hopfdde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with inputs outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A normalization or classification hit a vanishing denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The second-order multiple-scales system is (near) singular: 2iω is also a
/// characteristic root, or zero is.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// The stored history does not reach back far enough for the quadrature.
class InsufficientHistoryError : public Error {
 public:
  using Error::Error;
};

/// A simulated state became non-finite or left the divergence guard box.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double blow_up_time)
      : Error(what), time_(blow_up_time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Configuration problem; carries the offending key and (if known) line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, int line, const std::string& message);
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

}  // namespace hopfdde
