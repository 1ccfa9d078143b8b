#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elocc {

enum class ErrorCode {
  InvalidArgument,
  AllTruncated,
  NegativeInput,
  SizeTooLarge,
  NotSymmetric,
  OddSize,
  DimensionMismatch,
  NotNormalized,
  NoTransition,
  MultipleTransitions,
  DegenerateGround,
  BadSplit,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every elocc operation. The code identifies the
/// failure class so callers (the CLI, the Python layer) can map it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace elocc
