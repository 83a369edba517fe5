#include "specdet/zetafuncs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "specdet/error.hpp"

namespace specdet {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kPoleGuard = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_arguments(Complex s, Complex a) {
  if (std::abs(s - 1.0) < kPoleGuard) {
    throw Error(ErrorKind::PoleAtOne, "zeta_H(s, a) has a pole at s = 1");
  }
  if (!(a.real() > 0.0)) {
    throw Error(ErrorKind::DomainError,
                fmt::format("zeta_H requires Re a > 0, got a = {}{:+}i",
                            a.real(), a.imag()));
  }
}

}  // namespace

BernoulliTable::BernoulliTable(int upto) {
  if (upto < 0 || upto > kMaxIndex) {
    throw Error(ErrorKind::LimitExceeded,
                fmt::format("Bernoulli numbers are tabulated up to B_{}, "
                            "requested B_{}",
                            kMaxIndex, upto));
  }
  values_.reserve(upto + 1);
  values_.emplace_back(1);

  // Row n+1 of Pascal's triangle, rebuilt incrementally.
  std::vector<cpp_int> binom{1, 1};
  for (int n = 1; n <= upto; ++n) {
    std::vector<cpp_int> next(n + 2, 1);
    for (int k = 1; k <= n; ++k) next[k] = binom[k - 1] + binom[k];
    binom = std::move(next);

    Rational acc = 0;
    for (int k = 0; k < n; ++k) acc += Rational(binom[k]) * values_[k];
    values_.push_back(-acc / (n + 1));
  }

  cpp_int factorial = 1;
  for (int n = 1; n <= upto; ++n) {
    factorial *= n;
    if (n % 2 == 0) {
      even_coeffs_.push_back(
          (values_[n] / Rational(factorial)).convert_to<double>());
    }
  }
}

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table(BernoulliTable::kMaxIndex);
  return table;
}

BernoulliTable bernoulli(int upto) { return BernoulliTable(upto); }

void EMParams::validate() const {
  if (M < 1) {
    throw Error(ErrorKind::ValidationError, "Euler-Maclaurin M must be >= 1");
  }
  if (K < 1 || K > 30) {
    throw Error(ErrorKind::ValidationError,
                "Euler-Maclaurin K must lie in [1, 30]");
  }
}

namespace {

using Wide = std::complex<long double>;

constexpr long double kWideEps = std::numeric_limits<long double>::epsilon();

// B_{2k} / (2k)! in extended precision, k = 0 .. 30.
const std::array<long double, 31>& wide_coefficients() {
  static const auto coeffs = [] {
    std::array<long double, 31> out{};
    const auto& table = bernoulli_table();
    cpp_int factorial = 1;
    for (int n = 1; n <= BernoulliTable::kMaxIndex; ++n) {
      factorial *= n;
      if (n % 2 == 0) {
        out[n / 2] = (table[n] / Rational(factorial)).convert_to<long double>();
      }
    }
    return out;
  }();
  return coeffs;
}

// Euler-Maclaurin for sum_{j>=0} (j + a)^{-s}, or its s-derivative, carried
// out in long double. The (s)_{2k-1} rising factorial and its s-derivative
// are advanced together.
ZetaValue euler_maclaurin(Complex s_in, Complex a_in, const EMParams& params,
                          bool derivative) {
  check_arguments(s_in, a_in);
  params.validate();
  const auto& coeffs = wide_coefficients();
  const Wide s(s_in.real(), s_in.imag());
  const Wide a(a_in.real(), a_in.imag());

  // magnitude weights each term by the conditioning of exp(-s log x).
  Wide sum{0.0L, 0.0L};
  long double magnitude = 0.0L;
  auto add = [&](Wide term, Wide log_x) {
    sum += term;
    magnitude += std::abs(term) * (1.0L + std::abs(s) * std::abs(log_x));
  };

  for (int j = 0; j < params.M; ++j) {
    const Wide lg = std::log(static_cast<long double>(j) + a);
    const Wide term = std::exp(-s * lg);
    add(derivative ? -lg * term : term, lg);
  }

  const Wide cutoff = static_cast<long double>(params.M) + a;
  const Wide log_cutoff = std::log(cutoff);
  const Wide power = std::exp(-s * log_cutoff);  // cutoff^{-s}
  const Wide denom = s - 1.0L;
  if (derivative) {
    add(-log_cutoff * power * cutoff / denom - power * cutoff / (denom * denom),
        log_cutoff);
    add(-0.5L * log_cutoff * power, log_cutoff);
  } else {
    add(power * cutoff / denom, log_cutoff);
    add(0.5L * power, log_cutoff);
  }

  const Wide inv_sq = 1.0L / (cutoff * cutoff);
  Wide rising = s;  // (s)_{2k-1}
  Wide rising_ds = 1.0L;
  Wide scaled = power / cutoff;  // cutoff^{-s-2k+1}
  long double last = 0.0L;
  for (int k = 1; k <= params.K; ++k) {
    const Wide term =
        coeffs[k] * (derivative ? rising_ds - log_cutoff * rising : rising) *
        scaled;
    add(term, log_cutoff);
    last = std::abs(term);
    for (long double m : {2.0L * k - 1.0L, 2.0L * k}) {
      rising_ds = rising_ds * (s + m) + rising;
      rising *= s + m;
    }
    scaled *= inv_sq;
  }

  // First omitted correction, with |B_{2k}|/(2k)! ~ 2 (2pi)^{-2k}; the
  // remainder is at most a modest multiple of it. The derivative picks up
  // a log factor plus the rising-factorial derivative.
  const long double order = 2.0L * (params.K + 1);
  const long double coeff = 2.0L * std::pow(static_cast<long double>(kTwoPi), -order);
  long double next = coeff * std::abs(rising * scaled);
  if (derivative) {
    next = coeff * std::abs((rising_ds - log_cutoff * rising) * scaled);
  }
  const long double sigma = s.real() + order - 1.0L;
  const long double growth =
      std::max(1.0L, std::abs(s + order - 1.0L) / std::max(sigma, 1.0L)) *
      std::max(1.0L, std::exp(-s.imag() * std::arg(cutoff)));

  const Complex value(static_cast<double>(sum.real()),
                      static_cast<double>(sum.imag()));
  const double error = static_cast<double>(last + 2.0L * growth * next +
                                           8.0L * kWideEps * magnitude) +
                       kEps * std::abs(value);
  return {value, error};
}

}  // namespace

ZetaValue hurwitz_zeta_checked(Complex s, Complex a, const EMParams& params) {
  return euler_maclaurin(s, a, params, false);
}

ZetaValue hurwitz_zeta_ds_checked(Complex s, Complex a,
                                  const EMParams& params) {
  return euler_maclaurin(s, a, params, true);
}

Complex hurwitz_zeta(Complex s, Complex a, const EMParams& params) {
  return hurwitz_zeta_checked(s, a, params).value;
}

Complex hurwitz_zeta_ds(Complex s, Complex a, const EMParams& params) {
  return hurwitz_zeta_ds_checked(s, a, params).value;
}

Complex riemann_zeta(Complex s, const EMParams& params) {
  return hurwitz_zeta(s, 1.0, params);
}

Complex riemann_zeta_ds(Complex s, const EMParams& params) {
  return hurwitz_zeta_ds(s, 1.0, params);
}

Complex hermite_check(Complex s, Complex a) {
  check_arguments(s, a);
  const Complex i{0.0, 1.0};

  // sin(s atan(x/a)) / (a^2 + x^2)^{s/2} written through principal powers,
  // which stays valid for complex a with Re a > 0.
  auto integrand = [&](double x) -> Complex {
    const Complex diff = std::pow(a + i * x, -s) - std::pow(a - i * x, -s);
    return i * diff / std::expm1(kTwoPi * x);
  };

  double upper = 4.0;
  while (upper < 400.0) {
    const double bound = std::abs(std::pow(a + i * upper, -s)) +
                         std::abs(std::pow(a - i * upper, -s));
    if (bound * std::exp(-kTwoPi * upper) / kTwoPi < 1e-16) break;
    upper += 2.0;
  }

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr double kTolerance = 1e-13;
  double err_re = 0.0;
  double err_im = 0.0;
  double l1_re = 0.0;
  double l1_im = 0.0;
  const double re = Quadrature::integrate(
      [&](double x) { return integrand(x).real(); }, 0.0, upper, 20,
      kTolerance, &err_re, &l1_re);
  const double im = Quadrature::integrate(
      [&](double x) { return integrand(x).imag(); }, 0.0, upper, 20,
      kTolerance, &err_im, &l1_im);
  if (err_re > 1e-11 * std::max(1.0, l1_re) ||
      err_im > 1e-11 * std::max(1.0, l1_im)) {
    throw Error(ErrorKind::QuadratureFailure,
                fmt::format("Hermite integral did not converge (error {:.3g})",
                            std::max(err_re, err_im)));
  }

  return 0.5 * std::pow(a, -s) + std::pow(a, 1.0 - s) / (s - 1.0) +
         Complex{re, im};
}

}  // namespace specdet
