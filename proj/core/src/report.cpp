#include "rrlab/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace rrlab {

namespace {

constexpr std::size_t kDigits = 40;

BigReal scale_of(const BigReal& bound) { return max(BigReal(1, bound.ctx()), abs(bound)); }

std::optional<BigReal> margin_of(const CheckRecord& r) {
  std::optional<BigReal> m;
  if (r.upper) m = (*r.upper - r.measured) / scale_of(*r.upper);
  if (r.lower) {
    BigReal lo = (r.measured - *r.lower) / scale_of(*r.lower);
    if (!m || compare(lo, *m) < 0) m = lo;
  }
  return m;
}

std::string cell(const std::optional<BigReal>& v) { return v ? v->to_string(kDigits) : ""; }

}  // namespace

const CheckRecord& TraceReport::check(std::string label, long index, BigReal measured, std::optional<BigReal> lower,
                                      std::optional<BigReal> upper, bool strict) {
  const PrecisionContext& ctx = measured.ctx();
  BigReal tol = tolerance(ctx);
  bool ok = true;
  if (upper) {
    if (strict) {
      ok = compare(measured, *upper) < 0;
    } else {
      ok = compare(measured, *upper + tol * scale_of(*upper)) <= 0;
    }
  }
  if (lower && ok) ok = compare(measured, *lower - tol * scale_of(*lower)) >= 0;
  records.push_back({std::move(label), index, std::move(measured), std::move(lower), std::move(upper), strict, ok});
  return records.back();
}

const CheckRecord& TraceReport::info(std::string label, long index, BigReal measured) {
  return check(std::move(label), index, std::move(measured), std::nullopt, std::nullopt);
}

void TraceReport::fail(std::string label, long index, const std::string& why) {
  records.push_back({std::move(label), index, BigReal(), std::nullopt, std::nullopt, false, false});
  notes.push_back(records.back().label + " @" + std::to_string(index) + ": " + why);
}

bool TraceReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

std::size_t TraceReport::violations() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.pass ? 0 : 1;
  return n;
}

std::optional<BigReal> TraceReport::worst_margin() const {
  std::optional<BigReal> worst;
  for (const auto& r : records) {
    auto m = margin_of(r);
    if (m && (!worst || compare(*m, *worst) < 0)) worst = std::move(m);
  }
  return worst;
}

void TraceReport::merge(const TraceReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  if (other.reachable_levels && (!reachable_levels || *other.reachable_levels < *reachable_levels))
    reachable_levels = other.reachable_levels;
}

nlohmann::json TraceReport::to_json() const {
  using nlohmann::json;
  json recs = json::array();
  for (const auto& r : records) {
    recs.push_back({{"label", r.label},
                    {"index", r.index},
                    {"measured", r.measured.to_string(kDigits)},
                    {"lower", r.lower ? json(r.lower->to_string(kDigits)) : json(nullptr)},
                    {"upper", r.upper ? json(r.upper->to_string(kDigits)) : json(nullptr)},
                    {"strict", r.strict},
                    {"pass", r.pass}});
  }
  auto wm = worst_margin();
  json j = {{"schema", "rrlab-v1"},
            {"kind", "trace-report"},
            {"id", id},
            {"all_pass", all_pass()},
            {"violations", violations()},
            {"worst_margin", wm ? json(wm->to_string(12)) : json(nullptr)},
            {"records", recs},
            {"notes", notes}};
  if (reachable_levels) j["reachable_levels"] = *reachable_levels;
  return j;
}

std::string TraceReport::to_csv() const {
  std::ostringstream os;
  os << "label,index,measured,lower,upper,strict,pass\n";
  for (const auto& r : records) {
    os << r.label << ',' << r.index << ',' << r.measured.to_string(kDigits) << ',' << cell(r.lower) << ','
       << cell(r.upper) << ',' << (r.strict ? 1 : 0) << ',' << (r.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace rrlab
