#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rotoblur {

enum class ErrorCode {
  kNonMonotonicTime,
  kNonFiniteInput,
  kInvalidConfig,
  kNegativeSigma,
  kNonFiniteSigma,
  kEmptyImage,
  kMalformedHeader,
  kNonNumericField,
  kMalformedRow,
  kItemOutOfRange,
  kWrongItemCount,
  kNegativeTs,
  kEmptyInput,
  kAllZeroDifferences,
  kRatingOutOfRange,
  kImageFormat,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every rotoblur operation. `line()` is the 1-based
/// source line for parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  /// Message without the code/line decoration.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace rotoblur
