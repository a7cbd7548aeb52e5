#pragma once

#include <stdexcept>
#include <string>

namespace rumorsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, inconsistent inputs or missing state.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file content. Carries the 1-based line number.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ConfigError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NotFoundError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Pearson correlation of a constant vector.
class UndefinedCorrelation : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rumorsim
