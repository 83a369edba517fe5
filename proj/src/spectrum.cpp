#include "specdet/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "specdet/error.hpp"

namespace specdet {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Shifted-line cuts closer than this to +-pi/2 are refused.
constexpr double kAccumulationGuard = 1e-6;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::ValidationError, message);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// True if theta lies in some image [lo, hi] + 2pi m of the arc.
bool in_arc(double theta, double lo, double hi) {
  const double offset = std::fmod(theta - lo, kTwoPi);
  const double d = offset < 0.0 ? offset + kTwoPi : offset;
  return d <= hi - lo;
}

// True if the open interval (from, to) meets some image of [lo, hi].
bool sweep_meets_arc(double from, double to, double lo, double hi) {
  const double m_lo = std::floor((from - hi) / kTwoPi);
  const double m_hi = std::ceil((to - lo) / kTwoPi);
  for (double m = m_lo; m <= m_hi; m += 1.0) {
    if (lo + kTwoPi * m < to && hi + kTwoPi * m > from) return true;
  }
  return false;
}

struct Arc {
  double lo;
  double hi;
};

// The two argument arcs of a shifted line, widened by the accumulation guard
// at the +-pi/2 ends.
std::array<Arc, 2> shifted_arcs(const ShiftedLine& line) {
  const double lower = line.arc_lower();
  return {Arc{lower - kCutTolerance, kHalfPi + kAccumulationGuard},
          Arc{-kHalfPi - kAccumulationGuard, -lower + kCutTolerance}};
}

// Ray directions of a component that a cut must avoid.
std::vector<double> ray_angles(const SpectrumComponent& component) {
  return std::visit(
      overloaded{
          [](const PowerRays& p) { return p.angles; },
          [](const ExponentialRay& e) { return std::vector<double>{e.alpha}; },
          [](const LogarithmicRay& l) { return std::vector<double>{l.alpha}; },
          [](const auto&) { return std::vector<double>{}; },
      },
      component);
}

}  // namespace

double ShiftedLine::arc_lower() const noexcept { return std::atan2(1.0, b); }

void validate(const SpectrumComponent& component) {
  std::visit(
      overloaded{
          [](const FiniteSet& f) {
            if (f.eigenvalues.empty()) invalid("finite set must not be empty");
            for (const auto& z : f.eigenvalues) {
              if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                invalid("eigenvalues must be finite");
              }
              if (z == Complex{0.0, 0.0}) {
                invalid("finite set contains a zero eigenvalue");
              }
            }
          },
          [](const PowerRays& p) {
            if (!positive_finite(p.c1)) invalid("c1 must be positive");
            if (!positive_finite(p.c2)) invalid("c2 must be positive");
            if (p.angles.empty()) invalid("power rays need at least one angle");
            for (std::size_t k = 0; k < p.angles.size(); ++k) {
              const double a = p.angles[k];
              if (!(a >= 0.0 && a < kTwoPi)) {
                invalid("ray angles must lie in [0, 2pi)");
              }
              if (k > 0 && !(a > p.angles[k - 1])) {
                invalid("ray angles must be strictly increasing");
              }
            }
          },
          [](const ExponentialRay& e) {
            if (!positive_finite(e.c1)) invalid("c1 must be positive");
            if (!positive_finite(e.c2)) invalid("c2 must be positive");
            if (!std::isfinite(e.alpha)) invalid("alpha must be finite");
          },
          [](const LogarithmicRay& l) {
            if (!positive_finite(l.c1)) invalid("c1 must be positive");
            if (!(std::isfinite(l.c2) && l.c2 >= 1.0)) {
              invalid("c2 must be at least 1");
            }
            if (!std::isfinite(l.alpha)) invalid("alpha must be finite");
          },
          [](const ShiftedLine& s) {
            if (!(std::isfinite(s.b) && s.b >= 0.0)) {
              invalid("b must be finite and nonnegative");
            }
          },
      },
      component);
}

Spectrum::Spectrum(std::vector<SpectrumComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) invalid("spectrum needs at least one component");
  int lines = 0;
  for (const auto& c : components_) {
    validate(c);
    if (std::holds_alternative<ShiftedLine>(c)) ++lines;
  }
  if (lines > 1) invalid("at most one shifted_line component is allowed");
}

std::string_view to_string(ClassificationTag tag) noexcept {
  switch (tag) {
    case ClassificationTag::DeterminantDefined: return "DeterminantDefined";
    case ClassificationTag::DeterminantDivergent: return "DeterminantDivergent";
    case ClassificationTag::ZetaUndefined: return "ZetaUndefined";
  }
  return "Unknown";
}

Classification classify(const Spectrum& spectrum) {
  if (spectrum.contains<LogarithmicRay>()) {
    return {ClassificationTag::ZetaUndefined,
            "the spectral zeta function is not defined: a ray with "
            "logarithmically growing moduli makes sum omega_j^{-s} diverge for "
            "every s by the integral criterion, so no half-plane of "
            "convergence exists"};
  }
  if (spectrum.contains<ExponentialRay>()) {
    return {ClassificationTag::DeterminantDivergent,
            "the spectral determinant diverges to +infinity: an exponentially "
            "growing ray gives zeta(s) = c1^{-s} e^{-i alpha s}/(e^{c2 s} - 1), "
            "whose derivative tends to -infinity as s -> 0"};
  }
  return {ClassificationTag::DeterminantDefined,
          "the spectral determinant is defined: power-growth rays, shifted "
          "lines and finite sets give a zeta function regular at s = 0"};
}

std::vector<Complex> enumerate(const Spectrum& spectrum, int count,
                               int component_index) {
  const auto& comps = spectrum.components();
  if (component_index < 0 ||
      component_index >= static_cast<int>(comps.size())) {
    throw Error(ErrorKind::IndexOutOfRange,
                fmt::format("component index {} out of range [0, {})",
                            component_index, comps.size()));
  }
  if (count < 1) {
    throw Error(ErrorKind::IndexOutOfRange, "count must be at least 1");
  }

  std::vector<Complex> out;
  out.reserve(count);
  std::visit(
      overloaded{
          [&](const FiniteSet& f) {
            if (count > static_cast<int>(f.eigenvalues.size())) {
              throw Error(ErrorKind::IndexOutOfRange,
                          fmt::format("finite set has only {} eigenvalues",
                                      f.eigenvalues.size()));
            }
            out.assign(f.eigenvalues.begin(), f.eigenvalues.begin() + count);
          },
          [&](const PowerRays& p) {
            for (int j = 1; static_cast<int>(out.size()) < count; ++j) {
              const double modulus = p.c1 * std::pow(j, p.c2);
              for (double a : p.angles) {
                if (static_cast<int>(out.size()) == count) break;
                out.push_back(std::polar(modulus, a));
              }
            }
          },
          [&](const ExponentialRay& e) {
            for (int j = 1; j <= count; ++j) {
              out.push_back(std::polar(e.c1 * std::exp(e.c2 * j), e.alpha));
            }
          },
          [&](const LogarithmicRay& l) {
            const int j0 = l.first_index();
            for (int j = j0; j < j0 + count; ++j) {
              out.push_back(std::polar(l.c1 * std::log(l.c2 * j), l.alpha));
            }
          },
          [&](const ShiftedLine& s) {
            for (int j = 1; static_cast<int>(out.size()) < count; ++j) {
              out.emplace_back(s.b, j);
              if (static_cast<int>(out.size()) < count) {
                out.emplace_back(s.b, -j);
              }
            }
          },
      },
      comps[component_index]);
  return out;
}

int rays_crossed(const Spectrum& spectrum, double beta_from, double beta_to) {
  const BranchCut from(beta_from);
  const BranchCut to(beta_to);
  const double lo = std::min(beta_from, beta_to);
  const double hi = std::max(beta_from, beta_to);

  int count = 0;
  for (const auto& component : spectrum.components()) {
    for (double alpha : ray_angles(component)) {
      if (distance_to_cut(alpha, from) < kCutTolerance ||
          distance_to_cut(alpha, to) < kCutTolerance) {
        throw Error(ErrorKind::CutOnRay,
                    fmt::format("sweep endpoint lies on the ray at angle {}",
                                alpha));
      }
    }
    if (const auto* line = std::get_if<ShiftedLine>(&component)) {
      for (const Arc& arc : shifted_arcs(*line)) {
        if (in_arc(beta_from, arc.lo, arc.hi) ||
            in_arc(beta_to, arc.lo, arc.hi)) {
          throw Error(ErrorKind::CutOnRay,
                      "sweep endpoint lies in the argument arc of the "
                      "shifted line");
        }
        if (lo < hi && sweep_meets_arc(lo, hi, arc.lo, arc.hi)) {
          throw Error(ErrorKind::UnsupportedSweep,
                      "sweep crosses the accumulating eigenvalue arguments of "
                      "a shifted line; the (-1)^n rule does not apply, use "
                      "compare_cuts");
        }
      }
    }
    if (const auto* rays = std::get_if<PowerRays>(&component)) {
      for (double alpha : rays->angles) {
        count += static_cast<int>(std::floor((hi - alpha) / kTwoPi) -
                                  std::floor((lo - alpha) / kTwoPi));
      }
    }
  }
  return beta_to >= beta_from ? count : -count;
}

void check_cut(const Spectrum& spectrum, BranchCut cut) {
  for (const auto& component : spectrum.components()) {
    for (double alpha : ray_angles(component)) {
      if (distance_to_cut(alpha, cut) < kCutTolerance) {
        throw Error(ErrorKind::OnBranchCut,
                    fmt::format("cut lies on eigenvalue ray at angle {}",
                                alpha));
      }
    }
    if (const auto* finite = std::get_if<FiniteSet>(&component)) {
      for (const auto& z : finite->eigenvalues) {
        if (distance_to_cut(std::arg(z), cut) < kCutTolerance) {
          throw Error(ErrorKind::OnBranchCut,
                      fmt::format("cut passes through eigenvalue {}{:+}i",
                                  z.real(), z.imag()));
        }
      }
    }
    if (const auto* line = std::get_if<ShiftedLine>(&component)) {
      for (const Arc& arc : shifted_arcs(*line)) {
        if (in_arc(cut.beta, arc.lo, arc.hi)) {
          throw Error(ErrorKind::OnBranchCut,
                      "cut lies in the accumulating argument arc of the "
                      "shifted line");
        }
      }
    }
  }
}

}  // namespace specdet
