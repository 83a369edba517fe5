#pragma once

// Eigenvalue families and the classifier deciding whether the spectral zeta
// function and the determinant exist.

#include <string>
#include <variant>
#include <vector>

#include "specdet/branchlog.hpp"

namespace specdet {

/// An explicit, finite list of nonzero eigenvalues.
struct FiniteSet {
  std::vector<Complex> eigenvalues;
};

/// lambda_j = c1 * j^c2 * e^{i angle}, j >= 1, one ray per angle.
struct PowerRays {
  double c1 = 1.0;
  double c2 = 1.0;
  std::vector<double> angles;  // strictly increasing, within [0, 2pi)
};

/// lambda_j = c1 * e^{c2 j} * e^{i alpha}, j >= 1.
struct ExponentialRay {
  double c1 = 1.0;
  double c2 = 1.0;
  double alpha = 0.0;
};

/// lambda_j = c1 * log(c2 j) * e^{i alpha}. Starts at j = 1 when c2 > 1 and
/// at j = 2 when c2 = 1 so that every modulus is positive.
struct LogarithmicRay {
  double c1 = 1.0;
  double c2 = 2.0;
  double alpha = 0.0;

  int first_index() const noexcept { return c2 > 1.0 ? 1 : 2; }
};

/// lambda_j = b + i j, j in Z \ {0}.
struct ShiftedLine {
  double b = 0.0;

  /// Arguments of b + ij for j >= 1 fill [lower, pi/2); for j <= -1 they
  /// fill the mirror image.
  double arc_lower() const noexcept;
};

using SpectrumComponent =
    std::variant<FiniteSet, PowerRays, ExponentialRay, LogarithmicRay,
                 ShiftedLine>;

/// Checks a single component's invariants; throws ValidationError.
void validate(const SpectrumComponent& component);

/// A disjoint union of eigenvalue families.
class Spectrum {
 public:
  /// Validates every component; throws ValidationError.
  explicit Spectrum(std::vector<SpectrumComponent> components);

  const std::vector<SpectrumComponent>& components() const noexcept {
    return components_;
  }

  template <class Kind>
  bool contains() const noexcept {
    for (const auto& c : components_) {
      if (std::holds_alternative<Kind>(c)) return true;
    }
    return false;
  }

 private:
  std::vector<SpectrumComponent> components_;
};

enum class ClassificationTag {
  DeterminantDefined,
  DeterminantDivergent,
  ZetaUndefined,
};

std::string_view to_string(ClassificationTag tag) noexcept;

struct Classification {
  ClassificationTag tag = ClassificationTag::DeterminantDefined;
  std::string reason;
};

/// Logarithmic rays dominate exponential rays, which dominate everything else.
Classification classify(const Spectrum& spectrum);

/// First `count` eigenvalues of one component in index order. Power rays are
/// interleaved j-major; the shifted line runs j = 1, -1, 2, -2, ...
std::vector<Complex> enumerate(const Spectrum& spectrum, int count,
                               int component_index);

/// Signed number of power-ray images swept when the cut rotates from
/// beta_from to beta_to (negative for a clockwise sweep). Finite sets do not
/// count. Throws CutOnRay or UnsupportedSweep.
int rays_crossed(const Spectrum& spectrum, double beta_from, double beta_to);

/// Throws OnBranchCut if the cut passes through any eigenvalue, ray or the
/// accumulating argument arc of a shifted line.
void check_cut(const Spectrum& spectrum, BranchCut cut);

}  // namespace specdet
