#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dgh {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  PoleAtC1,
  NoOrbit,
  ComplexBranch,
  EmptyLevelSet,
  NonConvergent,
  StencilLeavesRegion,
  StencilLeavesCurve,
  QZero,
  PeakedProfile,
  SingularWeight,
  NotSymmetric,
  IntegrationFailure,
  EigensolverFailure,
  PeriodUnreachable,
  ParamMismatch,
};

std::string_view to_string(ErrorCode c);

// Thrown for violated preconditions on the mathematical domain. The CLI maps
// these to exit status 2; anything else escaping is an internal error.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dgh
