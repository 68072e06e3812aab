#pragma once

#include <stdexcept>
#include <string>

namespace densecomb {

/// Bad input: dimension mismatch, invalid window, uncertified scheme, ...
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A request exceeded a configured point-count or radius cap.  The math is
/// fine; the problem size is not.
class ResourceCapError : public std::runtime_error {
 public:
  explicit ResourceCapError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A requested tolerance could not be met within the evaluation caps.
class ToleranceError : public std::runtime_error {
 public:
  explicit ToleranceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace densecomb
