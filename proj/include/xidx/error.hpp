#pragma once

#include <stdexcept>
#include <string>

namespace xidx {

// Base class for all engine errors. The C API maps each subclass to a
// distinct status code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(what) {}
};

// Raised when a computation has no defined answer on the given input
// (all-zero Wilcoxon sample, a year with no valid citation pairs, ...).
class Degenerate : public Error {
 public:
  explicit Degenerate(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace xidx
