#pragma once

// Branch-cut-aware argument, logarithm and power. Every other module resolves
// the multivaluedness of log through these functions.

#include <complex>
#include <numbers>

namespace specdet {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angles closer than this to the cut (mod 2pi) count as lying on it.
inline constexpr double kCutTolerance = 1e-12;

/// A branch of the logarithm: arguments are taken from (beta, beta + 2pi].
///
/// beta is deliberately not reduced mod 2pi. Cuts at beta and beta + 2pi lie
/// on the same ray but select different sheets, and determinants computed
/// with them can differ.
struct BranchCut {
  double beta = -std::numbers::pi;

  /// Throws ValidationError unless beta is finite.
  explicit BranchCut(double angle);
  BranchCut() = default;

  friend bool operator==(const BranchCut&, const BranchCut&) = default;
};

/// What to do with a point whose argument coincides with the cut.
enum class OnCut {
  reject,  // throw OnBranchCut
  upper,   // take the closed end beta + 2pi of the interval
};

/// Lifts an angle into (beta, beta + 2pi].
double lift_angle(double theta, BranchCut cut, OnCut policy = OnCut::reject);

/// Distance from theta to the nearest image of the cut ray, in radians.
double distance_to_cut(double theta, BranchCut cut) noexcept;

double arg_in_branch(Complex z, BranchCut cut, OnCut policy = OnCut::reject);

/// ln|z| + i arg_in_branch(z, cut).
Complex log_branch(Complex z, BranchCut cut, OnCut policy = OnCut::reject);

/// exp(w * log_branch(z, cut)).
Complex pow_branch(Complex z, Complex w, BranchCut cut,
                   OnCut policy = OnCut::reject);

}  // namespace specdet
