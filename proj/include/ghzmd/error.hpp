#pragma once

#include <stdexcept>
#include <string>

namespace ghzmd {

enum class ErrorCode {
  kInvalidArgument = 1,
  kZeroLengthDivision,
  kUnnormalizedInput,
  kBudgetTooSmall,
  kInfeasibleConstraints,
  kIo,
};

/// Thrown by every core routine; the code survives the trip across the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ghzmd
