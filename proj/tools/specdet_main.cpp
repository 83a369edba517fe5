// specdet: zeta-regularized spectral determinants under an explicit branch cut.
//
//   specdet <command> --config <path> [--out <path>] [--oracle]
//                     [--beta <float>] [--beta2 <float>]
//
// Exit codes: 0 success, 1 error, 2 zeta function undefined,
// 3 determinant divergent.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "specdet/cli.hpp"
#include "specdet/error.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw specdet::Error(specdet::ErrorKind::ParseError,
                         "cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = specdet::cli;

  CLI::App app{"Spectral determinants with an explicit branch cut"};
  std::string command;
  std::string config_path;
  std::string out_path;
  bool oracle = false;
  double beta = 0.0;
  double beta2 = 0.0;

  app.add_option("command", command,
                 "classify | zeta | det | compare | sweep | witness")
      ->required();
  app.add_option("--config", config_path, "JSON job description")->required();
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_flag("--oracle", oracle, "cross-check against direct eigenvalue sums");
  auto* beta_opt = app.add_option("--beta", beta, "branch cut angle (radians)");
  auto* beta2_opt =
      app.add_option("--beta2", beta2, "second cut angle for compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR: usage: " << e.what() << "\n";
    return cli::exit_code::failure;
  }

  try {
    const auto parsed = cli::parse_command(command);
    if (!parsed) {
      throw specdet::Error(specdet::ErrorKind::ValidationError,
                           "unknown command '" + command + "'");
    }
    auto job = cli::parse_config(read_file(config_path));
    job.command = *parsed;
    if (*beta_opt) job.cut = beta;
    if (*beta2_opt) job.cut2 = beta2;
    if (!out_path.empty()) job.output = out_path;
    if (oracle) job.oracle = true;
    if (const char* em = std::getenv("SPECDET_EM_PARAMS")) {
      job.em = cli::parse_em_params(em);
    }
    job.validate();
    return cli::run(job, std::cout, std::cerr);
  } catch (const specdet::Error& e) {
    std::cerr << "ERROR: " << specdet::to_string(e.kind()) << ": " << e.what()
              << "\n";
    return cli::exit_code::failure;
  }
}
