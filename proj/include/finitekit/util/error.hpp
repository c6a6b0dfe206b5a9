#pragma once

#include <stdexcept>
#include <string>

namespace finitekit {

enum class ErrorCode {
  input,          // malformed file or argument
  coverage,       // trace does not cover a queried size
  monotonicity,   // trace invariant broken
  unsupported,    // operation not defined for the given operands
  budget,         // configured budget (trials, memory, steps) exceeded
  exhausted,      // enumeration or candidate pool ran dry
  inconsistent,   // problem has no acceptable output for some input
  compile,        // AST could not be lowered
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace finitekit
