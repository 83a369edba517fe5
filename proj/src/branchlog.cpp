#include "specdet/branchlog.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "specdet/error.hpp"

namespace specdet {

BranchCut::BranchCut(double angle) : beta(angle) {
  if (!std::isfinite(angle)) {
    throw Error(ErrorKind::ValidationError, "branch cut angle must be finite");
  }
}

double distance_to_cut(double theta, BranchCut cut) noexcept {
  return std::abs(std::remainder(theta - cut.beta, kTwoPi));
}

double lift_angle(double theta, BranchCut cut, OnCut policy) {
  if (distance_to_cut(theta, cut) < kCutTolerance) {
    if (policy == OnCut::reject) {
      throw Error(ErrorKind::OnBranchCut,
                  fmt::format("angle {} lies on the branch cut beta = {}",
                              theta, cut.beta));
    }
    return cut.beta + kTwoPi;
  }
  // Smallest k with theta + 2pi k > beta.
  const double k = std::floor((cut.beta - theta) / kTwoPi) + 1.0;
  double lifted = theta + kTwoPi * k;
  // floor() can land one sheet off when theta - beta is a near multiple of
  // 2pi; the tolerance check above keeps these corrections to rounding noise.
  if (lifted <= cut.beta) lifted += kTwoPi;
  if (lifted > cut.beta + kTwoPi) lifted -= kTwoPi;
  return lifted;
}

double arg_in_branch(Complex z, BranchCut cut, OnCut policy) {
  if (z == Complex{0.0, 0.0}) {
    throw Error(ErrorKind::ZeroArgument, "argument of zero is undefined");
  }
  return lift_angle(std::arg(z), cut, policy);
}

Complex log_branch(Complex z, BranchCut cut, OnCut policy) {
  const double theta = arg_in_branch(z, cut, policy);
  return {std::log(std::abs(z)), theta};
}

Complex pow_branch(Complex z, Complex w, BranchCut cut, OnCut policy) {
  return std::exp(w * log_branch(z, cut, policy));
}

}  // namespace specdet
