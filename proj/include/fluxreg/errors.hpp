#ifndef FLUXREG_ERRORS_HPP
#define FLUXREG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fluxreg {

enum class ErrorCode {
  DegenerateFlux,
  NoFiniteOrder,
  OffGrid,
  NonGridValue,
  UnboundedSupport,
  CapExceeded,
  OutOfTimeRange,
  SeedOutOfDomain,
  AmbiguousAttachment,
  MonotonicityViolation,
  ValueMismatch,
  NotConvex,
  NoEligiblePairs,
  NoPolynomialDegeneracy,
  NoSignChange,
  OddP,
  SizeCap,
  ParseError,
  ValidationError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace fluxreg

#endif
