#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddca {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input row.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Vector arity disagrees with the configured signal dimensionality.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Value outside the domain of a function (bad antigen id, nonpositive denominator).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration (weights, lifespans, segment size, generator spec).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Interval or index outside a recorded run.
class RangeError : public Error {
public:
  using Error::Error;
};

}  // namespace ddca
