#pragma once

#include <stdexcept>
#include <string>

namespace coxgraph {

enum class ErrorCode {
  NonSpherical = 10,
  NotNormalizing,
  NotAffine,
  NotARoot,
  InfiniteOrder,
  FiniteOrder,
  NotCyclicallyReduced,
  NotFullClosure,
  PreconditionViolated,
  NotStable,
  BudgetTooSmall,
  SearchBudgetExceeded,
  TooLarge,
  InternalMismatch,
  VerificationFailed,
  NotStandard,
  ParseError,
  UnsupportedShape,
  Overflow,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coxgraph
