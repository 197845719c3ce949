#include <nlohmann/json.hpp>
#include <sstream>

#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"

namespace rrlab::rrcf {

namespace {

using nlohmann::json;

const char* kCsvHeader = "n,re_K,im_K,re_R,im_R,abs_Q,re_h,im_h";

void put_ext(std::ostream& os, const ExtendedComplex& z) {
  if (z.is_infinite()) {
    os << ",inf,inf";
  } else {
    os << ',' << z.value().re().to_string() << ',' << z.value().im().to_string();
  }
}

ExtendedComplex ext_from(const std::string& re, const std::string& im, const PrecisionContext& ctx) {
  if (re == "inf" || im == "inf") return ExtendedComplex::infinity();
  return BigComplex(BigReal::from_string(re, ctx), BigReal::from_string(im, ctx));
}

json ext_json(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  return json::array({z.value().re().to_string(), z.value().im().to_string()});
}

ExtendedComplex ext_from_json(const json& j, const PrecisionContext& ctx) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedComplex::infinity();
  if (!j.is_array() || j.size() != 2) throw ConfigInvalid("expected [re, im] or \"inf\"");
  return ext_from(j[0].get<std::string>(), j[1].get<std::string>(), ctx);
}

bool same(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return a.value() == b.value();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string ApproximantTrace::to_csv() const {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.n;
    put_ext(os, r.K);
    if (r.R) {
      put_ext(os, *r.R);
    } else {
      os << ",,";
    }
    os << ',' << r.abs_Q.to_string();
    put_ext(os, r.h);
    os << '\n';
  }
  return os.str();
}

ApproximantTrace ApproximantTrace::from_csv(const std::string& csv, const PrecisionContext& ctx) {
  ApproximantTrace t;
  t.ctx = ctx;
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw ConfigInvalid("trace CSV header mismatch");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto c = split_csv(line);
    if (c.size() != 8) throw ConfigInvalid("trace CSV row needs 8 cells: " + line);
    TraceRecord r{std::stoul(c[0]), ext_from(c[1], c[2], ctx), std::nullopt, BigReal::from_string(c[5], ctx),
                  ext_from(c[6], c[7], ctx), false};
    if (!c[3].empty()) r.R = ext_from(c[3], c[4], ctx);
    r.blowup = r.K.is_infinite();
    t.records.push_back(std::move(r));
  }
  return t;
}

nlohmann::json ApproximantTrace::to_json() const {
  json recs = json::array();
  for (const auto& r : records) {
    recs.push_back({{"n", r.n},
                    {"K", ext_json(r.K)},
                    {"R", r.R ? ext_json(*r.R) : json(nullptr)},
                    {"abs_Q", r.abs_Q.to_string()},
                    {"h", ext_json(r.h)},
                    {"blowup", r.blowup}});
  }
  return {{"schema", "rrlab-v1"},
          {"kind", "approximant-trace"},
          {"precision_bits", ctx.bits},
          {"guard_bits", ctx.guard_bits},
          {"point", point},
          {"records", recs}};
}

ApproximantTrace ApproximantTrace::from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "rrlab-v1" || j.value("kind", "") != "approximant-trace")
    throw ConfigInvalid("not an rrlab-v1 approximant trace");
  ApproximantTrace t;
  t.ctx = PrecisionContext(j.at("precision_bits").get<long>(), j.at("guard_bits").get<long>());
  t.point = j.value("point", "");
  for (const auto& r : j.at("records")) {
    TraceRecord rec{r.at("n").get<std::size_t>(), ext_from_json(r.at("K"), t.ctx), std::nullopt,
                    BigReal::from_string(r.at("abs_Q").get<std::string>(), t.ctx), ext_from_json(r.at("h"), t.ctx),
                    r.at("blowup").get<bool>()};
    if (!r.at("R").is_null()) rec.R = ext_from_json(r["R"], t.ctx);
    t.records.push_back(std::move(rec));
  }
  return t;
}

bool ApproximantTrace::operator==(const ApproximantTrace& o) const {
  if (!(ctx == o.ctx) || records.size() != o.records.size()) return false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = o.records[i];
    if (a.n != b.n || !same(a.K, b.K) || !(a.abs_Q == b.abs_Q) || !same(a.h, b.h) || a.blowup != b.blowup) return false;
    if (a.R.has_value() != b.R.has_value() || (a.R && !same(*a.R, *b.R))) return false;
  }
  return true;
}

}  // namespace rrlab::rrcf
