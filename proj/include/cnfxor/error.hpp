#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnfxor {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A size guard (free dimension, variable count) was exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class NoSatInstances : public Error {
 public:
  using Error::Error;
};

class InsufficientConditioningEvents : public Error {
 public:
  using Error::Error;
};

class OutOfValidity : public Error {
 public:
  using Error::Error;
};

class NotBracketed : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace cnfxor
