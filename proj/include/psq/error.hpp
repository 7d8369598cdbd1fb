#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psq {

enum class ErrorCode {
  UnsupportedProduct,
  IncompatiblePhase,
  NonInvertible,
  NonInvertibleConstantTerm,
  NotFunctionOfQ,
  NotSymplectic,
  SingularCayley,
  DegenerateDecomposition,
  SingularDenominator,
  NoConvergence,
  SingularIntegrand,
  UnsupportedVariant,
  MixedPhase,
  FlowEscape,
  ZeroNode,
  DomainError,
  OutOfRange,
  UnderResolved,
  ResourceLimit,
  SyntaxError,
  UnknownSymbol,
  InvalidArgument,
  IoError,
};

/// Stable machine-readable name, used verbatim in JSON output.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position and the tokens that would
/// have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, std::string expected, const std::string& what)
      : Error(ErrorCode::SyntaxError, what),
        line_(line),
        col_(col),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

}  // namespace psq
