#include "specdet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "specdet/error.hpp"

namespace specdet::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// exp() of anything larger overflows.
constexpr double kMaxExponent = 700.0;

[[noreturn]] void outside(const std::string& what) {
  throw Error(ErrorKind::OutsideConvergenceRegion, what);
}

// Sum over j > N of g(j), where g(x) = g(N) * (u(x) / u(N))^{-p} and u is
// x plus a constant shift.
OracleValue em_tail(Complex last, Complex cutoff, Complex p, int terms) {
  const auto& table = bernoulli_table();
  Complex bracket = cutoff / (p - 1.0) - 0.5;
  const Complex inv_sq = 1.0 / (cutoff * cutoff);
  Complex rising = p;
  Complex power = 1.0 / cutoff;
  double smallest = 0.0;
  for (int k = 1; k <= terms; ++k) {
    const Complex correction = table.even_coefficient(k) * rising * power;
    bracket += correction;
    smallest = std::abs(correction);
    const double m = 2.0 * k;
    rising *= (p + m - 1.0) * (p + m);
    power *= inv_sq;
  }
  return {last * bracket, std::abs(last) * smallest};
}

struct Accumulator {
  Complex sum{0.0, 0.0};
  double magnitude = 0.0;
  double error = 0.0;

  void add(Complex term) {
    sum += term;
    magnitude += std::abs(term);
  }
  void add(const OracleValue& tail) {
    add(tail.value);
    error += tail.error;
  }
};

template <class Kind>
const Kind* first_of(const Spectrum& spectrum) {
  for (const auto& c : spectrum.components()) {
    if (const auto* k = std::get_if<Kind>(&c)) return k;
  }
  return nullptr;
}

}  // namespace

void OracleConfig::validate() const {
  if (truncation < 100) {
    throw Error(ErrorKind::ValidationError, "oracle truncation must be >= 100");
  }
  if (tail_terms < 1 || tail_terms > 30) {
    throw Error(ErrorKind::ValidationError,
                "oracle tail_terms must lie in [1, 30]");
  }
  if (!(fd_step > 0.0) || !(tolerance > 0.0)) {
    throw Error(ErrorKind::ValidationError,
                "oracle fd_step and tolerance must be positive");
  }
}

OracleValue direct_zeta(const Spectrum& spectrum, BranchCut cut, Complex s,
                        const OracleConfig& cfg) {
  cfg.validate();
  check_cut(spectrum, cut);
  const Complex minus_s = -s;
  const int n = cfg.truncation;
  Accumulator acc;

  for (const auto& component : spectrum.components()) {
    if (const auto* finite = std::get_if<FiniteSet>(&component)) {
      for (const auto& z : finite->eigenvalues) {
        acc.add(pow_branch(z, minus_s, cut));
      }
    } else if (const auto* rays = std::get_if<PowerRays>(&component)) {
      if (!(rays->c2 * s.real() > 1.0)) {
        outside(fmt::format("power rays need Re s > {}", 1.0 / rays->c2));
      }
      for (double alpha : rays->angles) {
        Complex last;
        for (int j = 1; j <= n; ++j) {
          last = pow_branch(std::polar(rays->c1 * std::pow(j, rays->c2), alpha),
                            minus_s, cut);
          acc.add(last);
        }
        acc.add(em_tail(last, static_cast<double>(n), rays->c2 * s,
                        cfg.tail_terms));
      }
    } else if (const auto* ray = std::get_if<ExponentialRay>(&component)) {
      if (!(s.real() > 0.0)) outside("exponential rays need Re s > 0");
      const Complex ratio = std::exp(-ray->c2 * s);
      Complex last;
      for (int j = 1; j <= n; ++j) {
        if (ray->c2 * j + std::log(ray->c1) > kMaxExponent) break;
        last = pow_branch(std::polar(ray->c1 * std::exp(ray->c2 * j), ray->alpha),
                          minus_s, cut);
        acc.add(last);
        if (std::abs(last) < kEps * kEps * std::abs(acc.sum)) break;
      }
      acc.add(last * ratio / (1.0 - ratio));
    } else if (const auto* line = std::get_if<ShiftedLine>(&component)) {
      if (!(s.real() > 1.0)) outside("a shifted line needs Re s > 1");
      for (double sign : {1.0, -1.0}) {
        Complex last;
        for (int j = 1; j <= n; ++j) {
          last = pow_branch(Complex{line->b, sign * j}, minus_s, cut);
          acc.add(last);
        }
        // b + i sign x = i sign (x - i sign b)
        acc.add(em_tail(last, Complex{static_cast<double>(n), -sign * line->b},
                        s, cfg.tail_terms));
      }
    } else {
      outside("a logarithmic ray has no half-plane of convergence");
    }
  }
  return {acc.sum, acc.error + 4.0 * kEps * acc.magnitude};
}

Complex fd_zeta_prime(const ZetaClosedForm& form, Complex s0,
                      const OracleConfig& cfg) {
  cfg.validate();
  const double h = cfg.fd_step;

  // The stencil must stay clear of every kernel pole.
  const double guard = 4.0 * h;
  for (const auto& term : form.terms) {
    std::optional<Complex> pole;
    if (const auto* k = std::get_if<RiemannKernel>(&term.kernel)) {
      pole = 1.0 / k->c2;
    } else if (std::holds_alternative<HurwitzKernel>(term.kernel)) {
      pole = 1.0;
    } else if (const auto* g = std::get_if<GeometricKernel>(&term.kernel)) {
      const double period = kTwoPi / g->c2;
      pole = Complex{0.0, period * std::round(s0.imag() / period)};
    }
    if (pole && std::abs(s0 - *pole) < guard) {
      throw Error(ErrorKind::NearPole,
                  fmt::format("finite-difference stencil at {}{:+}i meets the "
                              "pole at {}{:+}i",
                              s0.real(), s0.imag(), pole->real(), pole->imag()));
    }
  }

  auto central = [&](double step) {
    return (eval_zeta(form, s0 + step) - eval_zeta(form, s0 - step)) /
           (2.0 * step);
  };
  const Complex coarse = central(h);
  const Complex fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

std::vector<double> divergence_witness(const Spectrum& spectrum, double s,
                                       const std::vector<long>& checkpoints) {
  const auto* ray = first_of<LogarithmicRay>(spectrum);
  if (ray == nullptr) {
    throw Error(ErrorKind::ValidationError,
                "divergence witness needs a logarithmic ray");
  }
  if (!std::isfinite(s)) {
    throw Error(ErrorKind::ValidationError, "s must be finite");
  }
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] < 1 || (k > 0 && checkpoints[k] <= checkpoints[k - 1])) {
      throw Error(ErrorKind::ValidationError,
                  "checkpoints must be positive and strictly increasing");
    }
  }

  std::vector<double> sums;
  sums.reserve(checkpoints.size());
  const long first = ray->first_index();
  double sum = 0.0;
  long counted = 0;
  for (long target : checkpoints) {
    for (; counted < target; ++counted) {
      const double modulus = ray->c1 * std::log(ray->c2 * (first + counted));
      sum += std::exp(-s * std::log(modulus));
    }
    sums.push_back(sum);
  }
  return sums;
}

bool gaps_non_geometric(const std::vector<double>& partial_sums,
                        double ratio) {
  if (partial_sums.size() < 3) return false;
  double previous_gap = 0.0;
  for (std::size_t k = 1; k < partial_sums.size(); ++k) {
    const double gap = partial_sums[k] - partial_sums[k - 1];
    if (!(gap > 0.0)) return false;
    if (k > 1 && !(gap > ratio * previous_gap)) return false;
    previous_gap = gap;
  }
  return true;
}

std::vector<double> exp_blowup_witness(const Spectrum& spectrum,
                                       const std::vector<double>& s_values) {
  const auto* ray = first_of<ExponentialRay>(spectrum);
  if (ray == nullptr) {
    throw Error(ErrorKind::ValidationError,
                "blow-up witness needs an exponential ray");
  }
  for (std::size_t k = 0; k < s_values.size(); ++k) {
    if (!(s_values[k] > 0.0) || (k > 0 && !(s_values[k] < s_values[k - 1]))) {
      throw Error(ErrorKind::ValidationError,
                  "s values must be positive and strictly decreasing");
    }
  }

  const Complex w{std::log(ray->c1), ray->alpha};
  std::vector<double> out;
  out.reserve(s_values.size());
  for (double s : s_values) {
    // zeta(s) = e^{-s w} / (e^{c2 s} - 1)
    const Complex phase = std::exp(-s * w);
    const double denom = std::expm1(ray->c2 * s);
    const Complex derivative =
        -w * phase / denom -
        ray->c2 * phase * std::exp(ray->c2 * s) / (denom * denom);
    out.push_back(std::abs(derivative));
  }
  return out;
}

}  // namespace specdet::oracle
