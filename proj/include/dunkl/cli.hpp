#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dunkl/core.hpp"

namespace dunkl {

/// Process exit codes of the command-line front-end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitBand = 4,
  kExitVerify = 5,
};

struct RunConfig {
  std::string command;  // eval, scan or verify
  int d = 2;
  double k = 1.0;
  std::string kernel = "newton";
  std::string theorem;
  std::string suite;
  std::string x;  // points separated by ';', coordinates by ','
  std::string y;
  int n = -1;  // -1 keeps the command's default
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::string out;     // empty writes to standard output
  std::string format;  // csv or json; empty picks csv for eval and scan, json for verify
  std::string basis = "adapted";
  std::string baseline;  // scan baseline file; empty uses the bundled one
};

/// "0.3,0.2;1,0" -> two points. Throws InvalidParams on malformed input.
std::vector<Vector> parse_point_list(const std::string& text);

/// Shortest decimal that round-trips, with "inf" for infinity.
std::string format_value(double v);

/// Runs one configured command, writing results to cfg.out (or `out`) and diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dunkl
