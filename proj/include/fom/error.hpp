#pragma once

#include <stdexcept>
#include <string>

namespace fom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: config syntax, unknown keys, out-of-range parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace fom
