#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specdet {

enum class ErrorKind {
  ZeroArgument,
  OnBranchCut,
  LimitExceeded,
  PoleAtOne,
  DomainError,
  QuadratureFailure,
  ValidationError,
  IndexOutOfRange,
  CutOnRay,
  UnsupportedSweep,
  UndefinedZeta,
  NearPole,
  DivergentAtZero,
  OutsideConvergenceRegion,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace specdet
