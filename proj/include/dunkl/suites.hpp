#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl/core.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// One family of checks inside a suite: how many cases ran, how many failed, and the worst one.
struct SuiteCheck {
  std::string name;
  int count = 0;
  int failures = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool informational = false;  // reported, never fails the suite
  std::string worst;           // description of the case with the largest residual
  std::string detail;

  bool passed() const { return informational || (count > 0 && failures == 0); }
};

struct SuiteReport {
  std::string suite;
  int d = 0;
  double k = 0.0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::vector<SuiteCheck> checks;

  bool passed() const;
  /// First failing check, or nullptr.
  const SuiteCheck* first_failure() const;
};

enum class Suite {
  Harmonicity,
  ClosedForms,
  GreenPaths,
  PoissonJensen,
  HardyStein,
  GradientPoisson,
  Elementary,
  Remainder,
  PthPower,
  Dyson,
  PoissonNewton,
  GreenProperties,
  Normalizations
};

std::string_view to_string(Suite s);
/// Accepts the names from to_string and a few descriptive aliases.
Suite parse_suite(std::string_view name);
std::vector<Suite> all_suites();

struct SuiteOptions {
  int n = 0;  // cases per random family; 0 keeps each suite's default
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
};

/// Runs one suite for the given parameters. Closed-forms and Dyson always use d = 2, k = 1.
/// Numerical failures inside a case count as failures of that case.
SuiteReport run_suite(Suite s, const Params& p, const SuiteOptions& opts = {});

std::string to_json(const SuiteReport& r);

}  // namespace dunkl
