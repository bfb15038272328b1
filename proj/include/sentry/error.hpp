#pragma once

#include <stdexcept>
#include <string>

namespace sentry {

// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file contents (PGM header, labels CSV, scene file).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Frame sizes that violate an invariant or disagree with the stream.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Dataset/label inconsistencies and out-of-order streams.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sentry
