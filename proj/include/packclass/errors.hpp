#pragma once

#include <stdexcept>
#include <string>

namespace packclass {

enum class ErrorKind {
  kInvalidInstance,
  kUnknownBox,
  kDimensionMismatch,
  kDimensionOutOfRange,
  kInvalidPacking,
  kUnknownVertex,
  kTooLarge,
  kNotInterval,
  kNotPackingClass,
  kCyclicOrientation,
  kNoUndecided,
  kInfeasibleCrossSection,
  kParse,
};

const char* to_string(ErrorKind kind);

// Every library failure surfaces as this exception; `kind()` is the typed
// error from the operation contracts.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace packclass
