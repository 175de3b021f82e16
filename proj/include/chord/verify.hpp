#pragma once

// Cross-validation suites. Each check compares two independent routes (or a
// route against a pinned reference) and reports pass/fail with the numbers
// that decided it. Shared by the `verify` subcommand and the acceptance test.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chord {

struct CheckResult {
  std::string id;     // "1", "10a", ...
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Pinned acceptance parameters. Seeds were fixed once and are not tuned.
namespace acceptance {
inline constexpr std::uint64_t kSeed = 20240611;
inline constexpr double kChiSquared999Df26 = 54.0519623885766;  // 0.999 quantile, 26 dof
inline constexpr double kTotalVariationMax = 0.01;
inline constexpr double kAcceptanceCentre = 0.368;
inline constexpr double kAcceptanceTolerance = 0.01;
inline constexpr double kRatioN4Max = 0.01;
inline constexpr double kRatioN5Drift = 0.25;
inline constexpr double kProxyTolerance = 0.01;
inline constexpr double kSampledFirstTolerance = 0.05;  // times n
inline constexpr double kTerminalGrowth = 0.693, kTerminalGrowthTol = 0.1;
inline constexpr double kAdjacentGrowth = 0.347, kAdjacentGrowthTol = 0.08;
inline constexpr double kClassSigmas = 3.0;
inline constexpr double kStirlingTolerance = 0.02;
inline constexpr double kSkewnessMax = 0.5;
inline constexpr double kRuntimeCriterion1 = 30.0;
inline constexpr double kRuntimeCriterion6 = 120.0;
}  // namespace acceptance

enum class Suite { kRecurrences, kSeries, kAsymptotics, kSampler, kAll };

// Throws std::invalid_argument for unknown names.
Suite parse_suite(const std::string& name);
std::string suite_name(Suite suite);

struct VerifyOptions {
  int shards = 1;
  // Called after every finished check (progress output).
  std::function<void(const CheckResult&)> on_result;
};

// Checks of one suite, in criterion order. Criteria 10 and 12 are split into
// an exact part and a sampled part where they span suites.
std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options = {});

// Merges split parts ("10a", "10b") into one line per criterion 1..14.
std::vector<CheckResult> by_criterion(const std::vector<CheckResult>& results);

}  // namespace chord
