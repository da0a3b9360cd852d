#include "hwspace/error.hpp"

namespace hwspace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpec: return "invalid_spec";
    case ErrorCode::kInconsistentLattice: return "inconsistent_lattice";
    case ErrorCode::kSizeMismatch: return "size_mismatch";
    case ErrorCode::kOffGrid: return "off_grid";
    case ErrorCode::kNotInL2: return "not_in_l2";
    case ErrorCode::kTailBound: return "tail_bound";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kSingularGram: return "singular_gram";
    case ErrorCode::kFrameRefusal: return "frame_refusal";
    case ErrorCode::kUnknownKey: return "unknown_key";
    case ErrorCode::kMalformedValue: return "malformed_value";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& module, const std::string& message)
    : std::runtime_error(module + ": " + message), code_(code), module_(module) {}

FrameRefusal::FrameRefusal(const std::string& module, const std::string& message, double inf,
                           double sup)
    : Error(ErrorCode::kFrameRefusal, module, message), inf_(inf), sup_(sup) {}

}  // namespace hwspace
