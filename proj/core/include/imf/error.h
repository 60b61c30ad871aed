#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imf {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A line of an event stream that does not parse. `line_no` is 1-based.
class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_no, const std::string& reason);
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

// An event whose timestamp is smaller than the one before it.
class NonMonotonicTimestamp : public Error {
 public:
  explicit NonMonotonicTimestamp(std::size_t line_no);
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class OutOfBounds : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Majority count outside [0, n*n].
class InvalidCount : public InvalidParams {
 public:
  using InvalidParams::InvalidParams;
};

}  // namespace imf
