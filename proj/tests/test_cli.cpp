#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "specdet/cli.hpp"
#include "test_support.hpp"

using namespace specdet;
using namespace specdet::cli;
using specdet::testing::check_throws_kind;

namespace {

constexpr double pi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_text(std::string_view config) {
  std::ostringstream out, err;
  const int code = run(parse_config(config), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string error_message(std::string_view config) {
  try {
    parse_config(config);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

constexpr const char* kDwe = R"({
  "spectrum": [{"kind": "power_rays", "c1": 3.141592653589793, "c2": 1,
                "angles": [1.5707963267948966, 4.71238898038469]}],
  "command": "det", "cut": -3.141592653589793
})";

}  // namespace

TEST_CASE("parse_config minimal power-ray job") {
  const auto job = parse_config(R"({
    "spectrum": [{"kind": "power_rays", "c1": 1, "c2": 1, "angles": [1.5707963]}],
    "command": "det", "cut": -3.14159265
  })");
  REQUIRE(job.spectrum.components().size() == 1);
  const auto* rays = std::get_if<PowerRays>(&job.spectrum.components()[0]);
  REQUIRE(rays != nullptr);
  CHECK(rays->angles == std::vector<double>{1.5707963});
  CHECK(job.command == Command::det);
  CHECK(*job.cut == -3.14159265);
  CHECK_FALSE(job.oracle);
}

TEST_CASE("parse_config reads every component kind and option") {
  const auto job = parse_config(R"({
    "spectrum": [
      {"kind": "finite", "eigenvalues": [2, [0, -3]]},
      {"kind": "exp_ray", "c1": 1, "c2": 1, "alpha": 0.5},
      {"kind": "log_ray", "c1": 1, "c2": 2.718281828, "alpha": 0.5},
      {"kind": "shifted_line", "b": 1}
    ],
    "command": "zeta", "points": [[2, 0], 3, [3, 1]], "oracle": true,
    "sweep": {"from": 2.0, "to": 3.0, "steps": 5}, "cut2": 3.0,
    "out": "x.csv", "witness": {"s": 1, "checkpoints": [10, 20], "s_values": [0.5]}
  })");
  CHECK(job.spectrum.components().size() == 4);
  CHECK(job.points == std::vector<Complex>{{2, 0}, {3, 0}, {3, 1}});
  CHECK(job.oracle);
  CHECK(job.sweep->steps == 5);
  CHECK(*job.output == "x.csv");
  CHECK(job.witness.checkpoints == std::vector<long>{10, 20});
}

TEST_CASE("parse_config validation messages") {
  check_throws_kind([] {
    parse_config(R"({"spectrum": [{"kind": "power_rays", "c1": 1, "c2": 0, "angles": [1]}]})");
  }, ErrorKind::ValidationError);
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "power_rays", "c1": 1, "c2": 0, "angles": [1]}]})"),
                 "c2 must be positive"));
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "power_rays", "c1": 1, "c2": 1,
                                    "angles": [1.5707963]}], "cut": 1.5707963})"),
                 "cut lies on eigenvalue ray"));
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "circle"}]})"),
                 "spectrum[0].kind"));
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "shifted_line"}]})"),
                 "spectrum[0].b"));
  CHECK(contains(error_message(R"({"spectrum": []})"), "spectrum"));
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "shifted_line", "b": 1}],
                                    "command": "dance"})"),
                 "unknown command"));
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "shifted_line", "b": 1}],
                                    "sweep": {"from": 2, "to": 3, "steps": 1}})"),
                 "grid steps must be >= 2"));
  CHECK(contains(error_message(R"({"spectrum": [{"kind": "shifted_line", "b": 1}],
                                    "sweep": {"from": 1.0, "to": 3, "steps": 3}})"),
                 "sweep.from"));
}

TEST_CASE("parse_config syntax errors carry a location") {
  check_throws_kind([] { parse_config(R"({"spectrum": [)"); }, ErrorKind::ParseError);
  try {
    parse_config("{\"spectrum\": 1,,}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    // the offending second comma is the 16th byte
    CHECK(contains(e.what(), "at byte 16"));
  }
}

TEST_CASE("det job prints the DWE determinant") {
  const auto r = run_text(kDwe);
  CHECK(r.code == exit_code::ok);
  CHECK(contains(r.out, "det = 2.000000000 + 0.000000000i"));
  CHECK(contains(r.out, "classification: DeterminantDefined"));
  CHECK(r.err.empty());

  auto job = parse_config(kDwe);
  job.cut = 0.0;
  job.oracle = true;
  std::ostringstream out, err;
  CHECK(run(job, out, err) == exit_code::ok);
  CHECK(contains(out.str(), "det = -2.000000000 + 0.000000000i"));
  CHECK(contains(out.str(), "oracle zeta'(0)"));
}

TEST_CASE("compare job reports ratios") {
  const auto line = run_text(R"({
    "spectrum": [{"kind": "shifted_line", "b": 1}],
    "command": "compare", "cut": 0, "cut2": 3.141592653589793
  })");
  CHECK(line.code == exit_code::ok);
  CHECK(contains(line.out, "ratio = -535.49165"));

  const auto rays = run_text(R"({
    "spectrum": [{"kind": "power_rays", "c1": 2, "c2": 3,
                  "angles": [1.0471975511965976, 3.141592653589793, 4.71238898038469]}],
    "command": "compare", "cut": 3.2, "cut2": 0.5
  })");
  CHECK(rays.code == exit_code::ok);
  CHECK(contains(rays.out, "ratio = 1.000000000 + 0.000000000i"));
  CHECK(contains(rays.out, "rays crossed = 2"));

  const auto missing = run_text(R"({"spectrum": [{"kind": "shifted_line", "b": 1}],
                                    "command": "compare", "cut": 0})");
  CHECK(missing.code == exit_code::failure);
  CHECK(missing.err.rfind("ERROR:", 0) == 0);
}

TEST_CASE("classify exit codes") {
  const auto log_ray = run_text(R"({
    "spectrum": [{"kind": "log_ray", "c1": 1, "c2": 2.718281828459045, "alpha": 0}],
    "command": "classify"
  })");
  CHECK(log_ray.code == exit_code::zeta_undefined);
  CHECK(contains(log_ray.out, "spectral zeta function is not defined"));

  const auto exp_ray = run_text(R"({
    "spectrum": [{"kind": "exp_ray", "c1": 1, "c2": 1, "alpha": 0}],
    "command": "det"
  })");
  CHECK(exp_ray.code == exit_code::determinant_divergent);
  CHECK(contains(exp_ray.out, "+inf"));

  const auto defined = run_text(R"({"spectrum": [{"kind": "shifted_line", "b": 1}],
                                    "command": "classify"})");
  CHECK(defined.code == exit_code::ok);
}

TEST_CASE("zeta job writes CSV") {
  const auto r = run_text(R"({
    "spectrum": [{"kind": "power_rays", "c1": 3.141592653589793, "c2": 1,
                  "angles": [1.5707963267948966, 4.71238898038469]}],
    "command": "zeta", "cut": -3.141592653589793, "points": [[2, 0], [0.5, 0]],
    "oracle": true
  })");
  CHECK(r.code == exit_code::ok);
  std::istringstream lines(r.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "s_re,s_im,zeta_re,zeta_im,oracle_re,oracle_im\r");
  CHECK(first.rfind("2,0,-0.33333333333333", 0) == 0);
  // outside the convergence region the oracle columns stay empty
  CHECK(second.substr(second.size() - 3) == ",,\r");
}

TEST_CASE("witness jobs") {
  const auto log_ray = run_text(R"({
    "spectrum": [{"kind": "log_ray", "c1": 1, "c2": 2.718281828459045, "alpha": 0}],
    "command": "witness", "witness": {"s": 0, "checkpoints": [100, 1000]}
  })");
  CHECK(log_ray.code == exit_code::zeta_undefined);
  CHECK(log_ray.out == "n,partial_sum\r\n100,100\r\n1000,1000\r\n");

  const auto exp_ray = run_text(R"({
    "spectrum": [{"kind": "exp_ray", "c1": 1, "c2": 1, "alpha": 0}],
    "command": "witness"
  })");
  CHECK(exp_ray.code == exit_code::determinant_divergent);
  CHECK(exp_ray.out.rfind("s,abs_zeta_prime\r\n0.1,", 0) == 0);

  const auto defined = run_text(R"({"spectrum": [{"kind": "shifted_line", "b": 1}],
                                    "command": "witness"})");
  CHECK(defined.code == exit_code::failure);
}

TEST_CASE("sweep job across a ray boundary") {
  const auto path = std::filesystem::temp_directory_path() / "specdet_sweep_test.csv";
  const std::string config = R"({
    "spectrum": [{"kind": "power_rays", "c1": 3.141592653589793, "c2": 1,
                  "angles": [1.5707963267948966, 4.71238898038469]}],
    "command": "sweep", "sweep": {"from": -3.0, "to": 0.0, "steps": 31},
    "out": ")" + path.string() + R"("})";
  const auto r = run_text(config);
  CHECK(r.code == exit_code::ok);

  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string csv = buffer.str();
  std::filesystem::remove(path);

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "beta,re_det,im_det,abs_det,crossings\r");
  int rows = 0;
  int flips = 0;
  double previous_re = 0.0;
  while (std::getline(lines, line)) {
    double beta, re, im, abs_det;
    int crossings;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%d", &beta, &re, &im,
                        &abs_det, &crossings) == 5);
    CHECK(abs_det == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(crossings == (beta > -pi / 2 ? 1 : 0));
    if (rows > 0 && (re > 0) != (previous_re > 0)) ++flips;
    previous_re = re;
    ++rows;
  }
  CHECK(rows == 31);
  CHECK(flips == 1);

  // identical configs give identical bytes
  std::ostringstream a, b, err;
  auto job = parse_config(config);
  job.output.reset();
  run(job, a, err);
  run(job, b, err);
  CHECK(a.str() == b.str());
}

TEST_CASE("error paths print a single ERROR line") {
  auto job = parse_config(R"({"spectrum": [{"kind": "power_rays", "c1": 1, "c2": 2,
                                             "angles": [0]}], "command": "zeta",
                              "cut": 3, "points": [[0.5, 0]]})");
  std::ostringstream out, err;
  CHECK(run(job, out, err) == exit_code::failure);
  const std::string message = err.str();
  CHECK(message.rfind("ERROR: NearPole:", 0) == 0);
  CHECK(std::count(message.begin(), message.end(), '\n') == 1);

  JobConfig empty;
  std::ostringstream out2, err2;
  CHECK(run(empty, out2, err2) == exit_code::failure);
  CHECK(err2.str().rfind("ERROR:", 0) == 0);
}

TEST_CASE("format_csv_number and parse_em_params") {
  CHECK(format_csv_number(0.1) == "0.1");
  CHECK(format_csv_number(1e-20) == "1e-20");
  CHECK(format_csv_number(-535.4916555247646) == "-535.491655524765");
  CHECK(format_csv_number(2.0) == "2");

  const auto em = parse_em_params("40,10");
  CHECK(em.M == 40);
  CHECK(em.K == 10);
  check_throws_kind([] { parse_em_params("40"); }, ErrorKind::ParseError);
  check_throws_kind([] { parse_em_params("a,b"); }, ErrorKind::ParseError);
  check_throws_kind([] { parse_em_params("40,99"); }, ErrorKind::ValidationError);
  CHECK(parse_command("sweep") == Command::sweep);
  CHECK_FALSE(parse_command("nope").has_value());
}
