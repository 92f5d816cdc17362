#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "harmonic/report.hpp"

namespace harmonic::cli {

/// Everything a run depends on; embedded in every report.
struct RunConfig {
  std::string subcommand;
  std::string family;
  Json options = Json::object();  // subcommand options after defaults
  std::optional<double> tol;      // effective tolerance; unset when unused
  std::string out;
  bool json = false;
  std::uint64_t seed = 20240617;
};

Json to_json(const RunConfig& cfg);

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitError = 2 };

/// Runs the command line (argv[0] included) and returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmonic::cli
