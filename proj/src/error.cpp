#include "specdet/error.hpp"

namespace specdet {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::OnBranchCut: return "OnBranchCut";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::CutOnRay: return "CutOnRay";
    case ErrorKind::UnsupportedSweep: return "UnsupportedSweep";
    case ErrorKind::UndefinedZeta: return "UndefinedZeta";
    case ErrorKind::NearPole: return "NearPole";
    case ErrorKind::DivergentAtZero: return "DivergentAtZero";
    case ErrorKind::OutsideConvergenceRegion: return "OutsideConvergenceRegion";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace specdet
