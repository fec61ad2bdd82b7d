#pragma once

#include <stdexcept>
#include <string>

namespace thetapi {

/// Bad input: malformed files, out-of-range parameters, failed metric checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A contract the library itself is supposed to guarantee was broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

[[noreturn]] inline void fail(const std::string& message) { throw ValidationError(message); }

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

}  // namespace thetapi
