#pragma once

#include <stdexcept>
#include <string>

namespace frobhh {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  InvalidFieldSpec,
  NotASubspace,
  NonAssociative,
  InvalidPresentation,
  DegenerateForm,
  NotAutomorphism,
  NotDiagonalizable,
  BudgetExceeded,
  MixedComplexes,
  DegreeMismatch,
  DegreeTooLow,
  IndexOutOfRange,
  InadmissibleCharacteristic,
  ValidationFailure,
  DegreeOutOfWindow,
  ParseError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace frobhh
