#include "rotoblur/error.hpp"

namespace rotoblur {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kNegativeSigma: return "NegativeSigma";
    case ErrorCode::kNonFiniteSigma: return "NonFiniteSigma";
    case ErrorCode::kEmptyImage: return "EmptyImage";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kNonNumericField: return "NonNumericField";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kItemOutOfRange: return "ItemOutOfRange";
    case ErrorCode::kWrongItemCount: return "WrongItemCount";
    case ErrorCode::kNegativeTs: return "NegativeTs";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kAllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::kRatingOutOfRange: return "RatingOutOfRange";
    case ErrorCode::kImageFormat: return "ImageFormat";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::size_t line) {
  std::string out{to_string(code)};
  if (!message.empty()) out += ": " + message;
  if (line != 0) out += " (line " + std::to_string(line) + ")";
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line), detail_(message) {}

}  // namespace rotoblur
