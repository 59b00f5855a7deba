#pragma once

#include <stdexcept>
#include <string>

namespace projreg {

enum class ErrorCode {
  NonFinite,
  NonPositiveAlpha,
  RankZero,
  DimensionMismatch,
  EmptySet,
  TruncationTooLarge,
  NotInjective,
  NoTruth,
  BadDimensions,
  BadArgument,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type carrying a machine-readable code. The CLI maps
/// codes to exit status: numerical failures (RankZero, NotInjective) give
/// exit 3, everything else exit 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool is_numerical() const noexcept {
    return code_ == ErrorCode::RankZero || code_ == ErrorCode::NotInjective;
  }

 private:
  ErrorCode code_;
};

}  // namespace projreg
