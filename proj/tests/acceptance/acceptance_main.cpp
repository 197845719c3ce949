// Acceptance runner: one PASS/FAIL line per criterion.
//   rrlab_acceptance [--only N] [--profile quick|full] [--seed S]

#include <CLI11/CLI11.hpp>
#include <iostream>

#include "criteria.hpp"

int main(int argc, char** argv) {
  using namespace rrlab::tools;

  CLI::App app{"rrlab acceptance criteria"};
  int only = 0;
  std::string profile = "quick";
  std::uint64_t seed = 1;
  app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, kCriteriaCount));
  app.add_option("--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--seed", seed, "RNG seed");
  CLI11_PARSE(app, argc, argv);

  SuiteOptions opt;
  opt.profile = profile_from(profile);
  opt.seed = seed;
  opt.golden_dir = default_golden_dir();

  int failed = 0;
  for (int id = 1; id <= kCriteriaCount; ++id) {
    if (only && id != only) continue;
    try {
      CriterionResult r = run_criterion(id, opt);
      std::cout << format_line(r) << std::endl;
      if (!r.pass()) {
        ++failed;
        for (const auto& n : r.report.notes) std::cout << "  note: " << n << "\n";
      }
    } catch (const std::exception& e) {
      std::cout << "criterion " << id << " FAIL: " << criterion_title(id) << "; error: " << e.what() << std::endl;
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
