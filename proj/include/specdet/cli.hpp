#pragma once

// Job configuration and execution behind the `specdet` command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specdet/spectrum.hpp"
#include "specdet/zetafuncs.hpp"

namespace specdet::cli {

enum class Command { classify, zeta, det, compare, sweep, witness };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command) noexcept;

struct SweepGrid {
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
};

struct WitnessParams {
  double s = 2.0;  // real exponent for the logarithmic witness
  std::vector<long> checkpoints{100, 1000, 10000};
  std::vector<double> s_values{1e-1, 1e-2, 1e-3};  // exponential witness
};

struct JobConfig {
  Spectrum spectrum{{FiniteSet{{Complex{1.0, 0.0}}}}};
  std::optional<Command> command;
  std::optional<double> cut;
  std::optional<double> cut2;
  std::optional<SweepGrid> sweep;
  std::vector<Complex> points;
  WitnessParams witness;
  bool oracle = false;
  std::optional<std::string> output;
  EMParams em;

  /// Checks cross-field invariants (cuts and sweep endpoints off every ray,
  /// grid size). Throws ValidationError.
  void validate() const;
};

/// Parses and validates a JSON job document. Throws ParseError (with byte
/// offset) or ValidationError (with the offending field path).
JobConfig parse_config(std::string_view text);

/// Parses "M,K" as used by SPECDET_EM_PARAMS.
EMParams parse_em_params(std::string_view text);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int zeta_undefined = 2;
inline constexpr int determinant_divergent = 3;
}  // namespace exit_code

/// Runs the job. Reports go to `out`; CSV goes to job.output when set,
/// otherwise to `out`. Errors print one `ERROR:` line to `err`.
int run(const JobConfig& job, std::ostream& out, std::ostream& err);

/// Fixed CSV number format: 15 significant digits, lowercase exponent.
std::string format_csv_number(double x);

}  // namespace specdet::cli
