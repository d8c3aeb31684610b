#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "digifix/fixedpoint.hpp"

namespace digifix {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFalse = 1,
  kExitParseError = 2,
  kExitSemanticError = 3,
  kExitBudgetExceeded = 4,
};

struct CliOptions {
  std::uint64_t budget = kDefaultMapBudget;
  std::size_t max_iter = 0;  // 0: 4|X|
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  int window = 10;
};

/// Each command writes a human-readable block followed by one `record key=value ...`
/// line to `out`, diagnostics to `err`, and returns the process exit code.
int cmd_check(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_fixed_points(const std::string& path, const CliOptions& opts, std::ostream& out,
                     std::ostream& err);
int cmd_fpp(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err);
/// Without a path: the built-in doubling and involution refutations. With a path: searches
/// subsets of the document's image for a fixed-point-free map satisfying its condition.
int cmd_falsify(const std::optional<std::string>& path, const CliOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_demo(const CliOptions& opts, std::ostream& out, std::ostream& err);

struct DemoItem {
  std::string claim;
  /// The truth value the claim is expected to have; false marks an expected negative.
  bool expected = true;
  bool observed = false;
  std::string detail;

  bool pass() const { return expected == observed; }
};

/// Every reproduction: coefficient fallacies, both counterexamples, the FPP dichotomy,
/// and seeded property sweeps of the corrected theorems.
std::vector<DemoItem> run_demo(const CliOptions& opts);

}  // namespace digifix
