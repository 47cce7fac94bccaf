#pragma once

#include <stdexcept>
#include <string>

namespace srcrank {

// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Failures a driver may retry with fresh randomness, e.g. a cascade that
// dies out before reaching the requested size or a source whose component
// is too small.
class RetryableError : public Error {
 public:
  explicit RetryableError(const std::string& what) : Error(what) {}
};

}  // namespace srcrank
