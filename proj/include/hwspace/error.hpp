#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hwspace {

enum class ErrorCode {
  kInvalidSpec,        // malformed group/lattice/weight parameters
  kInconsistentLattice,// lattice does not fit the group realization
  kSizeMismatch,
  kOffGrid,
  kNotInL2,            // w^{-1} is not square integrable
  kTailBound,          // truncation bound above tolerance
  kNonFinite,
  kSingularGram,
  kFrameRefusal,       // periodization not bounded below
  kUnknownKey,
  kMalformedValue,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& module, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

// Raised when the lattice translates of the kernel form a frame rather than a
// Riesz sequence; callers treat this as a refusal, not a failure.
class FrameRefusal : public Error {
 public:
  FrameRefusal(const std::string& module, const std::string& message, double inf, double sup);

  double infimum() const noexcept { return inf_; }
  double supremum() const noexcept { return sup_; }

 private:
  double inf_;
  double sup_;
};

}  // namespace hwspace
