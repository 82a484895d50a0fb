#pragma once

#include <stdexcept>
#include <string>

namespace mixmult {

/// Base of every error the library raises. `kind()` is the stable,
/// machine-readable name used in CLI diagnostics.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define MIXMULT_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                    \
  public:                                                                        \
    explicit Name(const std::string& message) : Error(#Name, message) {}         \
  };

MIXMULT_DEFINE_ERROR(InvalidArgument)
MIXMULT_DEFINE_ERROR(InhomogeneousInput)
MIXMULT_DEFINE_ERROR(RingMismatch)
MIXMULT_DEFINE_ERROR(NegativeExponent)
MIXMULT_DEFINE_ERROR(WindowTooSmall)
MIXMULT_DEFINE_ERROR(FitMismatch)
MIXMULT_DEFINE_ERROR(NoStabilization)
MIXMULT_DEFINE_ERROR(NonIntegralLeadingCoefficient)
MIXMULT_DEFINE_ERROR(NegativeLeadingCoefficient)
MIXMULT_DEFINE_ERROR(ContainmentViolation)
MIXMULT_DEFINE_ERROR(StabilizationMismatch)
MIXMULT_DEFINE_ERROR(NegativeExceptionalDegree)
MIXMULT_DEFINE_ERROR(CriteriaDisagreement)
MIXMULT_DEFINE_ERROR(UndeclaredName)
MIXMULT_DEFINE_ERROR(InhomogeneousRelation)
MIXMULT_DEFINE_ERROR(SizeBound)

#undef MIXMULT_DEFINE_ERROR

/// Syntax error in a problem document, tagged with a 1-based position.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace mixmult
