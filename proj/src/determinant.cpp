#include "specdet/determinant.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "specdet/error.hpp"

namespace specdet {

namespace {

constexpr double kPoleDistance = 1e-10;
constexpr double kHalfPi = std::numbers::pi / 2.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// e^z - 1 without cancellation near z = 0.
Complex expm1(Complex z) {
  const double half_sin = std::sin(0.5 * z.imag());
  return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * half_sin * half_sin,
          std::exp(z.real()) * std::sin(z.imag())};
}

[[noreturn]] void near_pole(Complex pole) {
  throw Error(ErrorKind::NearPole,
              fmt::format("s is within {:g} of the kernel pole at {}{:+}i",
                          kPoleDistance, pole.real(), pole.imag()));
}

Complex eval_kernel(const ZetaKernel& kernel, Complex s,
                    const EMParams& params) {
  return std::visit(
      overloaded{
          [&](const RiemannKernel& k) {
            const double pole = 1.0 / k.c2;
            if (std::abs(s - pole) < kPoleDistance) near_pole(pole);
            return riemann_zeta(k.c2 * s, params);
          },
          [&](const HurwitzKernel& k) {
            if (std::abs(s - 1.0) < kPoleDistance) near_pole(1.0);
            return hurwitz_zeta(s, k.a, params);
          },
          [&](const GeometricKernel& k) {
            // Poles at s = 2 pi i m / c2.
            const double period = kTwoPi / k.c2;
            const Complex pole{0.0, period * std::round(s.imag() / period)};
            if (std::abs(s - pole) < kPoleDistance) near_pole(pole);
            return 1.0 / expm1(k.c2 * s);
          },
          [](const MonomialKernel&) { return Complex{1.0, 0.0}; },
      },
      kernel);
}

}  // namespace

ZetaClosedForm build_zeta(const Spectrum& spectrum, BranchCut cut,
                          const EMParams& params) {
  params.validate();
  if (classify(spectrum).tag == ClassificationTag::ZetaUndefined) {
    throw Error(ErrorKind::UndefinedZeta,
                "the spectral zeta function is not defined for a spectrum "
                "with a logarithmic ray");
  }
  check_cut(spectrum, cut);

  ZetaClosedForm form{cut, params, {}};
  for (const auto& component : spectrum.components()) {
    std::visit(
        overloaded{
            [&](const FiniteSet& f) {
              for (const auto& z : f.eigenvalues) {
                form.terms.push_back({arg_in_branch(z, cut),
                                      std::log(std::abs(z)), MonomialKernel{}});
              }
            },
            [&](const PowerRays& p) {
              for (double alpha : p.angles) {
                form.terms.push_back({lift_angle(alpha, cut), std::log(p.c1),
                                      RiemannKernel{p.c2}});
              }
            },
            [&](const ExponentialRay& e) {
              form.terms.push_back({lift_angle(e.alpha, cut), std::log(e.c1),
                                    GeometricKernel{e.c2}});
            },
            [](const LogarithmicRay&) {},
            [&](const ShiftedLine& s) {
              // b + ij = e^{i pi/2} (j - ib) and b - ij = e^{-i pi/2} (j + ib);
              // the whole argument arc lies on one sheet because check_cut
              // refused cuts inside it.
              form.terms.push_back({lift_angle(kHalfPi, cut), 0.0,
                                    HurwitzKernel{Complex{1.0, -s.b}}});
              form.terms.push_back({lift_angle(-kHalfPi, cut), 0.0,
                                    HurwitzKernel{Complex{1.0, s.b}}});
            },
        },
        component);
  }
  return form;
}

Complex eval_zeta(const ZetaClosedForm& form, Complex s) {
  const Complex i{0.0, 1.0};
  Complex sum{0.0, 0.0};
  for (const auto& term : form.terms) {
    const Complex phase = std::exp(-s * (term.log_scale + i * term.theta));
    sum += phase * eval_kernel(term.kernel, s, form.params);
  }
  return sum;
}

ZetaValue zeta_prime_at_zero_checked(const ZetaClosedForm& form) {
  const Complex i{0.0, 1.0};
  const Complex zero{0.0, 0.0};
  Complex sum{0.0, 0.0};
  double error = 0.0;
  // d/ds [e^{-s w} K(s)] at 0 is -w K(0) + K'(0).
  for (const auto& term : form.terms) {
    const Complex w = term.log_scale + i * term.theta;
    std::visit(
        overloaded{
            [&](const RiemannKernel& k) {
              const auto value = hurwitz_zeta_checked(zero, 1.0, form.params);
              const auto slope = hurwitz_zeta_ds_checked(zero, 1.0, form.params);
              sum += -w * value.value + k.c2 * slope.value;
              error += std::abs(w) * value.error + k.c2 * slope.error;
            },
            [&](const HurwitzKernel& k) {
              const auto value = hurwitz_zeta_checked(zero, k.a, form.params);
              const auto slope = hurwitz_zeta_ds_checked(zero, k.a, form.params);
              sum += -w * value.value + slope.value;
              error += std::abs(w) * value.error + slope.error;
            },
            [](const GeometricKernel&) {
              throw Error(ErrorKind::DivergentAtZero,
                          "an exponential ray makes zeta'(s) -> -infinity as "
                          "s -> 0");
            },
            [&](const MonomialKernel&) { sum += -w; },
        },
        term.kernel);
  }
  return {sum, error};
}

Complex zeta_prime_at_zero(const ZetaClosedForm& form) {
  return zeta_prime_at_zero_checked(form).value;
}

DeterminantReport determinant(const Spectrum& spectrum, BranchCut cut,
                              const EMParams& params) {
  DeterminantReport report;
  report.classification = classify(spectrum);
  report.cut = cut;
  switch (report.classification.tag) {
    case ClassificationTag::ZetaUndefined:
      throw Error(ErrorKind::UndefinedZeta, report.classification.reason);
    case ClassificationTag::DeterminantDivergent:
      check_cut(spectrum, cut);
      return report;
    case ClassificationTag::DeterminantDefined:
      break;
  }
  const auto form = build_zeta(spectrum, cut, params);
  const auto derivative = zeta_prime_at_zero_checked(form);
  const Complex det = std::exp(-derivative.value);
  report.zeta_prime_at_zero = derivative.value;
  report.determinant = det;
  report.error_estimate = std::abs(det) * derivative.error;
  return report;
}

Complex compare_cuts(const Spectrum& spectrum, BranchCut cut1, BranchCut cut2,
                     const EMParams& params) {
  const auto classification = classify(spectrum);
  if (classification.tag == ClassificationTag::ZetaUndefined) {
    throw Error(ErrorKind::UndefinedZeta, classification.reason);
  }
  const auto first = zeta_prime_at_zero(build_zeta(spectrum, cut1, params));
  const auto second = zeta_prime_at_zero(build_zeta(spectrum, cut2, params));
  return std::exp(-first + second);
}

}  // namespace specdet
