#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "digifix/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"digifix: fixed-point checks on digital metric spaces"};
  app.require_subcommand(1);

  digifix::CliOptions opts;
  app.add_option("--budget", opts.budget, "Map enumeration cap (overridden by DIGIFIX_BUDGET)");
  app.add_option("--max-iter", opts.max_iter, "Picard iteration cap (default 4|X|)");
  app.add_option("--tolerance", opts.tolerance, "Absolute tolerance for inequality verdicts");
  app.add_option("--seed", opts.seed, "Seed for sampled maps and property sweeps");
  app.add_option("--window", opts.window, "Window K of the doubling family")->check(CLI::Range(2, 61));
  app.fallthrough();

  std::string file;
  std::optional<std::string> falsify_file;

  auto* check = app.add_subcommand("check", "Check a document's map against its condition");
  check->add_option("file", file, "Space document")->required();
  auto* fixed = app.add_subcommand("fixed-points", "List fixed points; solve when a condition is given");
  fixed->add_option("file", file, "Space document")->required();
  auto* fpp = app.add_subcommand("fpp", "Decide the fixed point property by exhaustive enumeration");
  fpp->add_option("file", file, "Space document")->required();
  auto* falsify = app.add_subcommand("falsify", "Run built-in refutations or search for a counterexample");
  falsify->add_option("file", falsify_file, "Space document with a condition");
  auto* demo = app.add_subcommand("demo", "Reproduce every claim and print a PASS/FAIL checklist");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : digifix::kExitParseError;
  }

  if (const char* env = std::getenv("DIGIFIX_BUDGET")) {
    try {
      opts.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "DIGIFIX_BUDGET must be a non-negative integer\n";
      return digifix::kExitParseError;
    }
  }

  if (*check) return digifix::cmd_check(file, opts, std::cout, std::cerr);
  if (*fixed) return digifix::cmd_fixed_points(file, opts, std::cout, std::cerr);
  if (*fpp) return digifix::cmd_fpp(file, opts, std::cout, std::cerr);
  if (*falsify) return digifix::cmd_falsify(falsify_file, opts, std::cout, std::cerr);
  if (*demo) return digifix::cmd_demo(opts, std::cout, std::cerr);
  return digifix::kExitParseError;
}
