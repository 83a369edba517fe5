#pragma once

// Independent numerical checks. Eigenvalue sums here go through pow_branch on
// the actual eigenvalues, never through the zeta-function identities the
// determinant engine uses.

#include <vector>

#include "specdet/determinant.hpp"
#include "specdet/spectrum.hpp"

namespace specdet::oracle {

struct OracleConfig {
  int truncation = 2000;  // eigenvalues summed directly per family, >= 100
  int tail_terms = 8;     // Bernoulli corrections in the tail estimate
  double fd_step = 1e-6;
  double tolerance = 1e-8;

  void validate() const;
};

struct OracleValue {
  Complex value;
  double error = 0.0;
};

/// Partial sum of lambda_j^{-s} plus an Euler-Maclaurin tail estimate.
/// Throws OutsideConvergenceRegion unless the defining sum converges at s.
OracleValue direct_zeta(const Spectrum& spectrum, BranchCut cut, Complex s,
                        const OracleConfig& cfg = {});

/// Central differences at steps h and h/2, Richardson-extrapolated.
Complex fd_zeta_prime(const ZetaClosedForm& form, Complex s0,
                      const OracleConfig& cfg = {});

/// Partial sums over the first N moduli of the first logarithmic ray, one per
/// checkpoint N (checkpoints must be increasing).
std::vector<double> divergence_witness(const Spectrum& spectrum, double s,
                                       const std::vector<long>& checkpoints);

/// True when consecutive gaps of the witness sums shrink no faster than by
/// `ratio` per checkpoint, i.e. the sums show no sign of converging.
bool gaps_non_geometric(const std::vector<double>& partial_sums,
                        double ratio = 0.5);

/// |zeta'(s)| of the first exponential ray's closed form at each s.
std::vector<double> exp_blowup_witness(const Spectrum& spectrum,
                                       const std::vector<double>& s_values);

}  // namespace specdet::oracle
