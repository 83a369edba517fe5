#pragma once

// Closed-form spectral zeta functions and zeta-regularized determinants for a
// spectrum under a chosen branch cut.

#include <optional>
#include <variant>
#include <vector>

#include "specdet/branchlog.hpp"
#include "specdet/spectrum.hpp"
#include "specdet/zetafuncs.hpp"

namespace specdet {

/// zeta_R(c2 s); the sum over j of j^{-c2 s}.
struct RiemannKernel {
  double c2 = 1.0;
};

/// zeta_H(s, a).
struct HurwitzKernel {
  Complex a{1.0, 0.0};
};

/// 1 / (e^{c2 s} - 1); the sum over j >= 1 of e^{-c2 j s}.
struct GeometricKernel {
  double c2 = 1.0;
};

/// The constant 1, used for a single eigenvalue.
struct MonomialKernel {};

using ZetaKernel =
    std::variant<RiemannKernel, HurwitzKernel, GeometricKernel, MonomialKernel>;

/// exp(-i theta s - s log_scale) * kernel(s).
struct ZetaTerm {
  double theta = 0.0;      // branch-lifted argument, in (beta, beta + 2pi]
  double log_scale = 0.0;  // log of the modulus scale
  ZetaKernel kernel;
};

struct ZetaClosedForm {
  BranchCut cut;
  EMParams params;
  std::vector<ZetaTerm> terms;
};

struct DeterminantReport {
  Classification classification;
  BranchCut cut;
  std::optional<Complex> zeta_prime_at_zero;  // present iff defined
  std::optional<Complex> determinant;         // exp(-zeta_prime_at_zero)
  double error_estimate = 0.0;                // absolute, on the determinant
};

/// Throws OnBranchCut, or UndefinedZeta for logarithmic components.
ZetaClosedForm build_zeta(const Spectrum& spectrum, BranchCut cut,
                          const EMParams& params = {});

/// Throws NearPole within 1e-10 of a kernel pole.
Complex eval_zeta(const ZetaClosedForm& form, Complex s);

/// Analytic derivative at s = 0. Throws DivergentAtZero for geometric terms.
ZetaValue zeta_prime_at_zero_checked(const ZetaClosedForm& form);
Complex zeta_prime_at_zero(const ZetaClosedForm& form);

DeterminantReport determinant(const Spectrum& spectrum, BranchCut cut,
                              const EMParams& params = {});

/// det(cut1) / det(cut2) = exp(-zeta'_1(0) + zeta'_2(0)).
Complex compare_cuts(const Spectrum& spectrum, BranchCut cut1, BranchCut cut2,
                     const EMParams& params = {});

}  // namespace specdet
