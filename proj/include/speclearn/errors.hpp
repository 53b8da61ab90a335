#pragma once

#include <stdexcept>
#include <string>

namespace speclearn {

enum class ErrorKind {
  InvalidOrder,      // bad constructor argument (d = 0, n < 3, ...)
  SizeLimit,         // group order above the configured maximum
  Shape,             // mismatched vector/matrix dimensions
  UnsupportedGroup,  // no irrep construction for this group kind
  MalformedTable,    // multiplication table is not a Latin square
  DegenerateInput,   // vanishing Fourier coefficient in completeness recovery
  NotRelated,        // signals are not in the same orbit
  DecompositionFailed,  // Clebsch-Gordan splitting did not converge
  TrainingDiverged,  // non-finite loss or gradient
  Precondition,      // other violated precondition
  Parse,             // malformed config / file / group spec
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace speclearn
