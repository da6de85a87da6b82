#pragma once

#include <stdexcept>
#include <string>

namespace horoeq {

/// Invalid argument or violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric guard tripped: precision caps, iteration limits, blowups.
/// The CLI maps these to exit code 3.
class NumericGuard : public std::runtime_error {
 public:
  NumericGuard(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

inline NumericGuard overflow_error(const std::string& w) { return {"Overflow", w}; }
inline NumericGuard iteration_limit(const std::string& w) { return {"IterationLimit", w}; }
inline NumericGuard precision_exceeded(const std::string& w) {
  return {"PrecisionExceeded", w};
}
inline NumericGuard depth_unreliable(const std::string& w) { return {"DepthUnreliable", w}; }
inline NumericGuard empty_window(const std::string& w) { return {"EmptyWindow", w}; }
inline NumericGuard guard_violation(const std::string& w) { return {"GuardViolation", w}; }

/// Matrix entries that should be integers are not.
class NonIntegral : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace horoeq
