#ifndef MOMEXT_ERROR_HPP
#define MOMEXT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace momext {

// Every mathematical precondition failure carries one of these codes so
// callers (and the CLI exit-code contract) can tell them apart from
// input/parse errors, which are reported as std::runtime_error.
enum class ErrorCode {
  DimensionMismatch,
  NotHermitian,
  NotUnitary,
  NotSymmetric,
  NotCommuting,
  NotNormal,
  NoConvergence,
  NotPSD,
  RealShift,
  EigenvalueOne,
  HypothesisViolation,
  IncompleteTable,
  ConditionBFailed,
  NotFlat,
  InvalidShape,
  Singular,
};

const char* error_code_name(ErrorCode code);

class MathError : public std::runtime_error {
 public:
  MathError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace momext

#endif
