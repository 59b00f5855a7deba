#include "projreg/errors.hpp"

namespace projreg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite:
      return "non_finite";
    case ErrorCode::NonPositiveAlpha:
      return "non_positive_alpha";
    case ErrorCode::RankZero:
      return "rank_zero";
    case ErrorCode::DimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::EmptySet:
      return "empty_set";
    case ErrorCode::TruncationTooLarge:
      return "truncation_too_large";
    case ErrorCode::NotInjective:
      return "not_injective";
    case ErrorCode::NoTruth:
      return "no_truth";
    case ErrorCode::BadDimensions:
      return "bad_dimensions";
    case ErrorCode::BadArgument:
      return "bad_argument";
    case ErrorCode::IoError:
      return "io_error";
  }
  return "unknown";
}

}  // namespace projreg
