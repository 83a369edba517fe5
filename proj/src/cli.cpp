#include "specdet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "specdet/determinant.hpp"
#include "specdet/error.hpp"
#include "specdet/oracle.hpp"

namespace specdet::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultCut = -std::numbers::pi;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ValidationError, fmt::format("{}: {}", path, what));
}

double number(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) invalid(path + "." + key, "missing field");
  if (!it->is_number()) invalid(path + "." + key, "expected a number");
  return it->get<double>();
}

Complex complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  invalid(path, "expected a number or a [re, im] pair");
}

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) invalid(path, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) {
      invalid(fmt::format("{}[{}]", path, k), "expected a number");
    }
    out.push_back(v[k].get<double>());
  }
  return out;
}

SpectrumComponent parse_component(const json& obj, const std::string& path) {
  if (!obj.is_object()) invalid(path, "expected an object");
  const auto kind_it = obj.find("kind");
  if (kind_it == obj.end() || !kind_it->is_string()) {
    invalid(path + ".kind", "missing string discriminator");
  }
  const auto kind = kind_it->get<std::string>();

  SpectrumComponent component;
  if (kind == "finite") {
    const auto it = obj.find("eigenvalues");
    if (it == obj.end() || !it->is_array()) {
      invalid(path + ".eigenvalues", "expected a list");
    }
    FiniteSet set;
    for (std::size_t k = 0; k < it->size(); ++k) {
      set.eigenvalues.push_back(complex_value(
          (*it)[k], fmt::format("{}.eigenvalues[{}]", path, k)));
    }
    component = std::move(set);
  } else if (kind == "power_rays") {
    const auto it = obj.find("angles");
    if (it == obj.end()) invalid(path + ".angles", "missing field");
    component = PowerRays{number(obj, "c1", path), number(obj, "c2", path),
                          numbers(*it, path + ".angles")};
  } else if (kind == "exp_ray") {
    component = ExponentialRay{number(obj, "c1", path), number(obj, "c2", path),
                               number(obj, "alpha", path)};
  } else if (kind == "log_ray") {
    component = LogarithmicRay{number(obj, "c1", path), number(obj, "c2", path),
                               number(obj, "alpha", path)};
  } else if (kind == "shifted_line") {
    component = ShiftedLine{number(obj, "b", path)};
  } else {
    invalid(path + ".kind", fmt::format("unknown component kind '{}'", kind));
  }

  try {
    validate(component);
  } catch (const Error& e) {
    invalid(path, e.what());
  }
  return component;
}

void check_cut_field(const Spectrum& spectrum, double beta,
                     const std::string& path) {
  try {
    check_cut(spectrum, BranchCut(beta));
  } catch (const Error& e) {
    invalid(path, e.what());
  }
}

int code_for(ClassificationTag tag) {
  switch (tag) {
    case ClassificationTag::ZetaUndefined: return exit_code::zeta_undefined;
    case ClassificationTag::DeterminantDivergent:
      return exit_code::determinant_divergent;
    case ClassificationTag::DeterminantDefined: return exit_code::ok;
  }
  return exit_code::failure;
}

// Values that print as zero lose their sign so output is stable.
double tidy(double x, int decimals) {
  return std::abs(x) < 0.5 * std::pow(10.0, -decimals) ? 0.0 : x;
}

std::string format_complex(Complex z) {
  const double re = tidy(z.real(), 9);
  const double im = tidy(z.imag(), 9);
  return fmt::format("{:.9f} {} {:.9f}i", re, im < 0.0 ? '-' : '+',
                     std::abs(im));
}

void print_classification(std::ostream& out, const Classification& c) {
  fmt::print(out, "classification: {}\nreason: {}\n", to_string(c.tag),
             c.reason);
}

struct SweepRow {
  double beta = 0.0;
  std::optional<Complex> det;
  std::optional<int> crossings;
};

std::vector<SweepRow> evaluate_sweep(const Spectrum& spectrum,
                                     const SweepGrid& grid,
                                     const EMParams& em) {
  std::vector<SweepRow> rows(grid.steps);
  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      SweepRow& row = rows[k];
      row.beta = grid.from + (grid.to - grid.from) * k / (grid.steps - 1);
      if (k == grid.steps - 1) row.beta = grid.to;
      try {
        row.det = determinant(spectrum, BranchCut(row.beta), em).determinant;
      } catch (const Error&) {
        // grid point on a ray or inside a shifted-line arc
      }
      try {
        row.crossings = rays_crossed(spectrum, grid.from, row.beta);
      } catch (const Error&) {
      }
    }
  };

  const int workers = std::clamp(
      static_cast<int>(std::thread::hardware_concurrency()), 1, 16);
  const int chunk = (grid.steps + workers - 1) / workers;
  std::vector<std::jthread> threads;
  for (int begin = 0; begin < grid.steps; begin += chunk) {
    threads.emplace_back(work, begin, std::min(begin + chunk, grid.steps));
  }
  threads.clear();  // joins
  return rows;
}

class CsvSink {
 public:
  CsvSink(const std::optional<std::string>& path, std::ostream& fallback) {
    if (path) {
      file_.open(*path, std::ios::binary | std::ios::trunc);
      if (!file_) {
        throw Error(ErrorKind::ValidationError,
                    fmt::format("cannot open output file '{}'", *path));
      }
    }
    stream_ = path ? &file_ : &fallback;
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k > 0) *stream_ << ',';
      *stream_ << fields[k];
    }
    *stream_ << "\r\n";
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

int run_det(const JobConfig& job, const Classification& c, std::ostream& out) {
  const BranchCut cut(job.cut.value_or(kDefaultCut));
  print_classification(out, c);
  if (c.tag == ClassificationTag::DeterminantDivergent) {
    check_cut(job.spectrum, cut);
    fmt::print(out, "det diverges to +inf\n");
    return exit_code::determinant_divergent;
  }
  if (c.tag == ClassificationTag::ZetaUndefined) {
    return exit_code::zeta_undefined;
  }

  const auto report = determinant(job.spectrum, cut, job.em);
  const Complex det = *report.determinant;
  fmt::print(out, "cut: beta = {:.15g}\n", cut.beta);
  fmt::print(out, "zeta'(0) = {}\n", format_complex(*report.zeta_prime_at_zero));
  fmt::print(out, "det = {}\n", format_complex(det));
  fmt::print(out, "|det| = {:.9f}\n", std::abs(det));
  fmt::print(out, "arg(det) = {:.9f}\n", tidy(std::arg(det), 9));
  fmt::print(out, "error estimate = {:.3e}\n", report.error_estimate);

  if (job.oracle) {
    const auto form = build_zeta(job.spectrum, cut, job.em);
    const Complex fd = oracle::fd_zeta_prime(form, 0.0);
    fmt::print(out, "oracle zeta'(0) (finite difference) = {}\n",
               format_complex(fd));
    fmt::print(out, "oracle deviation = {:.3e}\n",
               std::abs(fd - *report.zeta_prime_at_zero));
  }
  return exit_code::ok;
}

int run_compare(const JobConfig& job, const Classification& c,
                std::ostream& out) {
  if (!job.cut || !job.cut2) {
    throw Error(ErrorKind::ValidationError,
                "compare needs both cut and cut2 (or --beta/--beta2)");
  }
  print_classification(out, c);
  if (c.tag == ClassificationTag::ZetaUndefined) {
    return exit_code::zeta_undefined;
  }
  if (c.tag == ClassificationTag::DeterminantDivergent) {
    fmt::print(out, "det diverges to +inf for both cuts; no finite ratio\n");
    return exit_code::determinant_divergent;
  }
  const BranchCut first(*job.cut);
  const BranchCut second(*job.cut2);
  const Complex ratio = compare_cuts(job.spectrum, first, second, job.em);
  fmt::print(out, "cut1: beta = {:.15g}\ncut2: beta = {:.15g}\n", first.beta,
             second.beta);
  fmt::print(out, "ratio = {}\n", format_complex(ratio));
  if (job.spectrum.contains<PowerRays>() &&
      !job.spectrum.contains<ShiftedLine>()) {
    const int n = rays_crossed(job.spectrum, second.beta, first.beta);
    fmt::print(out, "rays crossed = {}\n", n);
  }
  return exit_code::ok;
}

int run_sweep(const JobConfig& job, const Classification& c,
              std::ostream& out) {
  if (!job.sweep) {
    throw Error(ErrorKind::ValidationError, "sweep needs a sweep grid");
  }
  if (c.tag != ClassificationTag::DeterminantDefined) {
    print_classification(out, c);
    return code_for(c.tag);
  }
  const auto rows = evaluate_sweep(job.spectrum, *job.sweep, job.em);
  CsvSink csv(job.output, out);
  csv.row({"beta", "re_det", "im_det", "abs_det", "crossings"});
  for (const auto& row : rows) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const Complex det = row.det.value_or(Complex{nan, nan});
    csv.row({format_csv_number(row.beta), format_csv_number(det.real()),
             format_csv_number(det.imag()),
             format_csv_number(row.det ? std::abs(det) : nan),
             row.crossings ? std::to_string(*row.crossings) : ""});
  }
  return exit_code::ok;
}

int run_zeta(const JobConfig& job, const Classification& c, std::ostream& out) {
  if (job.points.empty()) {
    throw Error(ErrorKind::ValidationError, "zeta needs at least one point");
  }
  if (c.tag == ClassificationTag::ZetaUndefined) {
    print_classification(out, c);
    return exit_code::zeta_undefined;
  }
  const BranchCut cut(job.cut.value_or(kDefaultCut));
  const auto form = build_zeta(job.spectrum, cut, job.em);

  CsvSink csv(job.output, out);
  std::vector<std::string> header{"s_re", "s_im", "zeta_re", "zeta_im"};
  if (job.oracle) {
    header.insert(header.end(), {"oracle_re", "oracle_im"});
  }
  csv.row(header);
  for (const Complex s : job.points) {
    const Complex value = eval_zeta(form, s);
    std::vector<std::string> fields{
        format_csv_number(s.real()), format_csv_number(s.imag()),
        format_csv_number(value.real()), format_csv_number(value.imag())};
    if (job.oracle) {
      try {
        const auto direct = oracle::direct_zeta(job.spectrum, cut, s);
        fields.push_back(format_csv_number(direct.value.real()));
        fields.push_back(format_csv_number(direct.value.imag()));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OutsideConvergenceRegion) throw;
        fields.insert(fields.end(), {"", ""});
      }
    }
    csv.row(fields);
  }
  return exit_code::ok;
}

int run_witness(const JobConfig& job, const Classification& c,
                std::ostream& out) {
  if (c.tag == ClassificationTag::ZetaUndefined) {
    const auto sums = oracle::divergence_witness(job.spectrum, job.witness.s,
                                                 job.witness.checkpoints);
    CsvSink csv(job.output, out);
    csv.row({"n", "partial_sum"});
    for (std::size_t k = 0; k < sums.size(); ++k) {
      csv.row({std::to_string(job.witness.checkpoints[k]),
               format_csv_number(sums[k])});
    }
    return exit_code::zeta_undefined;
  }
  if (c.tag == ClassificationTag::DeterminantDivergent) {
    const auto values =
        oracle::exp_blowup_witness(job.spectrum, job.witness.s_values);
    CsvSink csv(job.output, out);
    csv.row({"s", "abs_zeta_prime"});
    for (std::size_t k = 0; k < values.size(); ++k) {
      csv.row({format_csv_number(job.witness.s_values[k]),
               format_csv_number(values[k])});
    }
    return exit_code::determinant_divergent;
  }
  throw Error(ErrorKind::ValidationError,
              "witness needs a logarithmic or exponential ray");
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::classify, Command::zeta, Command::det,
                    Command::compare, Command::sweep, Command::witness}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::classify: return "classify";
    case Command::zeta: return "zeta";
    case Command::det: return "det";
    case Command::compare: return "compare";
    case Command::sweep: return "sweep";
    case Command::witness: return "witness";
  }
  return "unknown";
}

void JobConfig::validate() const {
  if (cut) check_cut_field(spectrum, *cut, "cut");
  if (cut2) check_cut_field(spectrum, *cut2, "cut2");
  if (sweep) {
    if (sweep->steps < 2) invalid("sweep.steps", "grid steps must be >= 2");
    check_cut_field(spectrum, sweep->from, "sweep.from");
    check_cut_field(spectrum, sweep->to, "sweep.to");
  }
  em.validate();
}

JobConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError,
                fmt::format("at byte {}: {}", e.byte, e.what()));
  }
  if (!doc.is_object()) invalid("<root>", "expected a JSON object");

  const auto spec_it = doc.find("spectrum");
  if (spec_it == doc.end() || !spec_it->is_array() || spec_it->empty()) {
    invalid("spectrum", "expected a nonempty list of components");
  }
  std::vector<SpectrumComponent> components;
  for (std::size_t k = 0; k < spec_it->size(); ++k) {
    components.push_back(
        parse_component((*spec_it)[k], fmt::format("spectrum[{}]", k)));
  }

  JobConfig job;
  try {
    job.spectrum = Spectrum(std::move(components));
  } catch (const Error& e) {
    invalid("spectrum", e.what());
  }

  if (const auto it = doc.find("command"); it != doc.end()) {
    if (!it->is_string()) invalid("command", "expected a string");
    job.command = parse_command(it->get<std::string>());
    if (!job.command) {
      invalid("command",
              fmt::format("unknown command '{}'", it->get<std::string>()));
    }
  }
  if (doc.contains("cut")) job.cut = number(doc, "cut", "<root>");
  if (doc.contains("cut2")) job.cut2 = number(doc, "cut2", "<root>");
  if (const auto it = doc.find("sweep"); it != doc.end()) {
    if (!it->is_object()) invalid("sweep", "expected an object");
    const double steps = number(*it, "steps", "sweep");
    if (steps != std::floor(steps)) invalid("sweep.steps", "expected an integer");
    job.sweep = SweepGrid{number(*it, "from", "sweep"), number(*it, "to", "sweep"),
                          static_cast<int>(steps)};
  }
  if (const auto it = doc.find("points"); it != doc.end()) {
    if (!it->is_array()) invalid("points", "expected a list");
    for (std::size_t k = 0; k < it->size(); ++k) {
      job.points.push_back(complex_value((*it)[k], fmt::format("points[{}]", k)));
    }
  }
  if (const auto it = doc.find("oracle"); it != doc.end()) {
    if (!it->is_boolean()) invalid("oracle", "expected true or false");
    job.oracle = it->get<bool>();
  }
  if (const auto it = doc.find("out"); it != doc.end()) {
    if (!it->is_string()) invalid("out", "expected a path string");
    job.output = it->get<std::string>();
  }
  if (const auto it = doc.find("witness"); it != doc.end()) {
    if (!it->is_object()) invalid("witness", "expected an object");
    if (it->contains("s")) job.witness.s = number(*it, "s", "witness");
    if (const auto cp = it->find("checkpoints"); cp != it->end()) {
      job.witness.checkpoints.clear();
      for (double n : numbers(*cp, "witness.checkpoints")) {
        if (n != std::floor(n) || n < 1) {
          invalid("witness.checkpoints", "expected positive integers");
        }
        job.witness.checkpoints.push_back(static_cast<long>(n));
      }
    }
    if (const auto sv = it->find("s_values"); sv != it->end()) {
      job.witness.s_values = numbers(*sv, "witness.s_values");
    }
  }

  job.validate();
  return job;
}

EMParams parse_em_params(std::string_view text) {
  const auto comma = text.find(',');
  auto parse_int = [&](std::string_view part) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(std::string(part), &used);
      if (used != part.size()) throw std::invalid_argument("trailing");
      return value;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError,
                  fmt::format("SPECDET_EM_PARAMS must be \"M,K\", got '{}'",
                              text));
    }
  };
  if (comma == std::string_view::npos) parse_int("");
  EMParams params{parse_int(text.substr(0, comma)),
                  parse_int(text.substr(comma + 1))};
  params.validate();
  return params;
}

std::string format_csv_number(double x) { return fmt::format("{:.15g}", x); }

int run(const JobConfig& job, std::ostream& out, std::ostream& err) {
  try {
    if (!job.command) {
      throw Error(ErrorKind::ValidationError, "no command given");
    }
    const auto classification = classify(job.spectrum);
    switch (*job.command) {
      case Command::classify:
        print_classification(out, classification);
        return code_for(classification.tag);
      case Command::det: return run_det(job, classification, out);
      case Command::compare: return run_compare(job, classification, out);
      case Command::sweep: return run_sweep(job, classification, out);
      case Command::zeta: return run_zeta(job, classification, out);
      case Command::witness: return run_witness(job, classification, out);
    }
  } catch (const Error& e) {
    fmt::print(err, "ERROR: {}: {}\n", to_string(e.kind()), e.what());
    return exit_code::failure;
  } catch (const std::exception& e) {
    fmt::print(err, "ERROR: {}\n", e.what());
    return exit_code::failure;
  }
  return exit_code::failure;
}

}  // namespace specdet::cli
