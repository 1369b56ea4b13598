#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simplexlearn {

enum class ErrorCode {
  kDegenerateSimplex,
  kInfeasibleParams,
  kInsufficientData,
  kPairing,
  kParameter,
  kSnrTooLow,
  kDegenerateData,
  kFamilyTooLarge,
  kTooManyCandidates,
  kEmptyFamily,
  kInvalidPair,
  kUnsupportedExact,
  kOutOfRegime,
  kDimension,
  kIo,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// Every domain failure in the library is reported through this type. The CLI
// maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace simplexlearn
