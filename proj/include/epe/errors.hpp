#pragma once

#include <stdexcept>
#include <string>

namespace epe {

/// Thrown when a caller breaks a documented precondition (bad index,
/// nonpositive tolerance, malformed configuration, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a run exceeds a hard safety limit (iteration cap, resampling
/// cap). Seeing one of these means something upstream is wrong.
class Diagnostic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace epe
