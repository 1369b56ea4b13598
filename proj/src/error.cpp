#include "simplexlearn/error.hpp"
#include "simplexlearn/types.hpp"

#include <string>

namespace simplexlearn {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateSimplex: return "degenerate-simplex";
    case ErrorCode::kInfeasibleParams: return "infeasible-params";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kPairing: return "pairing";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kSnrTooLow: return "snr-too-low";
    case ErrorCode::kDegenerateData: return "degenerate-data";
    case ErrorCode::kFamilyTooLarge: return "family-too-large";
    case ErrorCode::kTooManyCandidates: return "too-many-candidates";
    case ErrorCode::kEmptyFamily: return "empty-family";
    case ErrorCode::kInvalidPair: return "invalid-pair";
    case ErrorCode::kUnsupportedExact: return "unsupported-exact";
    case ErrorCode::kOutOfRegime: return "out-of-regime";
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

void check_dimension(int dim) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::kDimension,
          "dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
              std::to_string(dim));
}

}  // namespace simplexlearn
