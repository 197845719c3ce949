#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rrlab/bigarith.hpp"

namespace rrlab {

struct CheckRecord {
  std::string label;
  long index = 0;
  BigReal measured;
  std::optional<BigReal> lower;
  std::optional<BigReal> upper;
  bool strict = false;  // upper bound is a strict inequality
  bool pass = true;
};

struct TraceReport {
  std::string id;
  std::vector<CheckRecord> records;
  std::vector<std::string> notes;
  std::optional<long> reachable_levels;

  // Evaluates the bounds and appends. Records with neither bound are informational.
  const CheckRecord& check(std::string label, long index, BigReal measured, std::optional<BigReal> lower,
                           std::optional<BigReal> upper, bool strict = false);
  const CheckRecord& info(std::string label, long index, BigReal measured);
  void fail(std::string label, long index, const std::string& why);

  bool all_pass() const;
  // Smallest relative slack over bounded records; negative when something fails.
  std::optional<BigReal> worst_margin() const;
  std::size_t violations() const;

  void merge(const TraceReport& other);

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

}  // namespace rrlab
