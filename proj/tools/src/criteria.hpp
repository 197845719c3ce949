#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "artifacts.hpp"
#include "config.hpp"
#include "rrlab/report.hpp"

namespace rrlab::tools {

inline constexpr int kCriteriaCount = 11;

struct SuiteOptions {
  Profile profile = Profile::Quick;
  std::uint64_t seed = 1;
  std::filesystem::path golden_dir;
};

std::filesystem::path default_golden_dir();

struct CriterionResult {
  int id = 0;
  std::string title;
  TraceReport report;
  std::vector<std::pair<std::string, std::string>> extra;  // additional artifacts (name, content)
  double seconds = 0;
  std::optional<double> limit_seconds;

  bool checks_pass() const { return report.all_pass(); }
  bool within_time() const { return !limit_seconds || seconds <= *limit_seconds; }
  bool pass() const { return checks_pass() && within_time(); }
};

std::string criterion_title(int id);
std::optional<double> runtime_limit(int id, Profile p);

// Runs one acceptance criterion, 1..11. Criterion 11 runs verify_all twice.
CriterionResult run_criterion(int id, const SuiteOptions& opt);

// One console line: "criterion N PASS|FAIL: title; checks; time".
std::string format_line(const CriterionResult& r);

struct VerifySummary {
  std::vector<CriterionResult> results;
  bool all_pass() const;
  nlohmann::json to_json() const;  // no timings, so reruns compare byte for byte
};

// Criteria 1..10 under the given profile. Artifacts go to `out` when given,
// console lines to `log` when given.
VerifySummary verify_all(const SuiteOptions& opt, ArtifactWriter* out, std::ostream* log);

}  // namespace rrlab::tools
