#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specrisk {

/// Base of every error raised by the library. The CLI maps each subclass to
/// its own one-line diagnostic and a nonzero exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. line() is 1-based; 0 when the error is not tied to
/// a single row (e.g. too few rows).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A domain invariant was violated (non-positive price, unordered dates, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An argument outside an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Requested work exceeds the configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The spectrum is identically zero: the series carries no fluctuation.
class NoRiskSignal : public Error {
 public:
  NoRiskSignal() : Error("no risk signal") {}
};

/// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace specrisk
