#pragma once

// Riemann and Hurwitz zeta functions for complex arguments, continued to the
// whole s-plane by Euler-Maclaurin summation.

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "specdet/branchlog.hpp"

namespace specdet {

using Rational = boost::multiprecision::cpp_rational;

/// Exact Bernoulli numbers B_0 ... B_n (convention B_1 = -1/2).
class BernoulliTable {
 public:
  static constexpr int kMaxIndex = 60;

  /// Solves sum_{k=0}^{n} C(n+1, k) B_k = 0. Throws LimitExceeded past 60.
  explicit BernoulliTable(int upto);

  int upto() const noexcept { return static_cast<int>(values_.size()) - 1; }
  const Rational& operator[](int n) const { return values_.at(n); }
  const std::vector<Rational>& values() const noexcept { return values_; }

  /// B_{2k} / (2k)! rounded to double, for k = 1 ... upto/2.
  double even_coefficient(int k) const { return even_coeffs_.at(k - 1); }

 private:
  std::vector<Rational> values_;
  std::vector<double> even_coeffs_;
};

/// Shared immutable table up to B_60.
const BernoulliTable& bernoulli_table();

BernoulliTable bernoulli(int upto);

/// Euler-Maclaurin controls: M terms are summed directly, K even Bernoulli
/// corrections are added at the cutoff.
struct EMParams {
  int M = 30;
  int K = 12;

  /// Throws ValidationError unless M >= 1 and 1 <= K <= 30.
  void validate() const;
};

struct ZetaValue {
  Complex value;
  double error = 0.0;  // absolute estimate: last correction plus rounding
};

ZetaValue hurwitz_zeta_checked(Complex s, Complex a, const EMParams& params = {});
ZetaValue hurwitz_zeta_ds_checked(Complex s, Complex a,
                                  const EMParams& params = {});

/// zeta_H(s, a) = sum_{j>=0} (j + a)^{-s}, continued. Requires Re a > 0.
Complex hurwitz_zeta(Complex s, Complex a, const EMParams& params = {});

/// d/ds zeta_H(s, a), by differentiating each Euler-Maclaurin term.
Complex hurwitz_zeta_ds(Complex s, Complex a, const EMParams& params = {});

Complex riemann_zeta(Complex s, const EMParams& params = {});
Complex riemann_zeta_ds(Complex s, const EMParams& params = {});

/// Hermite's integral representation evaluated by adaptive Gauss-Kronrod
/// quadrature. Independent of the Euler-Maclaurin path; used for checking.
Complex hermite_check(Complex s, Complex a);

}  // namespace specdet
