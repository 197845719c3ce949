#include <nlohmann/json.hpp>

#include "rrlab/cfrac.hpp"
#include "rrlab/errors.hpp"

namespace rrlab::cfrac {

namespace {

using nlohmann::json;

json big_list(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

mpz_class big_from(const json& j) {
  mpz_class v;
  if (j.is_number_unsigned() || j.is_number_integer()) return mpz_class(j.dump());
  if (!j.is_string() || v.set_str(j.get<std::string>(), 10) != 0)
    throw ConfigInvalid("expected an integer or a decimal integer string, got " + j.dump());
  return v;
}

std::vector<mpz_class> big_list_from(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigInvalid(std::string("field '") + field + "' must be an array");
  std::vector<mpz_class> v;
  for (const auto& x : j) v.push_back(big_from(x));
  return v;
}

std::vector<long> long_list_from(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigInvalid(std::string("field '") + field + "' must be an array");
  std::vector<long> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ConfigInvalid(std::string("field '") + field + "' must hold integers");
    v.push_back(x.get<long>());
  }
  return v;
}

std::vector<int> residue_list(const json& j, const char* field) {
  std::vector<int> v;
  for (long x : long_list_from(j, field)) v.push_back(static_cast<int>(x));
  return v;
}

const char* growth_name(Growth g) {
  switch (g) {
    case Growth::Golden: return "golden";
    case Growth::Diamond: return "diamond";
    case Growth::Constant: return "constant";
  }
  return "?";
}

Growth growth_from(const std::string& s) {
  if (s == "golden") return Growth::Golden;
  if (s == "diamond") return Growth::Diamond;
  if (s == "constant") return Growth::Constant;
  throw ConfigInvalid("unknown growth rule '" + s + "'");
}

}  // namespace

nlohmann::json PartialQuotientStream::to_json() const {
  json j;
  j["kind"] = stream_kind_name(kind_);
  switch (kind_) {
    case StreamKind::Explicit:
      j["terms"] = big_list(terms_);
      break;
    case StreamKind::Periodic:
      j["prefix"] = big_list(terms_);
      j["period"] = big_list(period_);
      break;
    case StreamKind::Tower:
      j["base"] = base_;
      j["offset_prefix"] = offset_prefix_;
      j["offset_period"] = offset_period_;
      break;
    default:
      j["growth"] = {{"kind", growth_name(growth_.kind)}, {"value", growth_.value}};
      if (residues_) j["residues"] = {{"prefix", residues_->prefix}, {"period", residues_->period}};
      if (first_) j["first"] = first_->get_str();
      break;
  }
  return j;
}

PartialQuotientStream PartialQuotientStream::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigInvalid("stream description needs a string 'kind'");
  std::string kind = j["kind"];
  PartialQuotientStream s;
  if (kind == "explicit") {
    s = explicit_list(big_list_from(j.at("terms"), "terms"));
  } else if (kind == "periodic") {
    s = periodic(j.contains("prefix") ? big_list_from(j["prefix"], "prefix") : std::vector<mpz_class>{},
                 big_list_from(j.at("period"), "period"));
  } else if (kind == "tower") {
    std::uint64_t base = j.value("base", 2ULL);
    s = tower(base, j.contains("offset_prefix") ? long_list_from(j["offset_prefix"], "offset_prefix") : std::vector<long>{},
              j.contains("offset_period") ? long_list_from(j["offset_period"], "offset_period") : std::vector<long>{});
  } else if (kind == "S-minimal") {
    s = s_minimal(j.value("kappa", std::string("1")));
  } else if (kind == "S-diamond") {
    ResiduePattern p = alpha_residues();
    if (j.contains("residues")) {
      const json& r = j["residues"];
      p.prefix = r.contains("prefix") ? residue_list(r["prefix"], "prefix") : std::vector<int>{};
      p.period = r.contains("period") ? residue_list(r["period"], "period") : std::vector<int>{};
    }
    s = s_diamond(std::move(p));
  } else if (kind == "S-prime") {
    s = s_prime();
  } else {
    throw ConfigInvalid("unknown stream kind '" + kind + "'");
  }
  if (s.is_generator()) {
    if (j.contains("growth")) {
      const json& g = j["growth"];
      s.growth_ = {growth_from(g.at("kind").get<std::string>()), g.value("value", std::string(""))};
    }
    if (j.contains("first")) s.first_ = big_from(j["first"]);
    if (s.first_ && *s.first_ < 1) throw ConfigInvalid("'first' must be positive");
  }
  return s;
}

}  // namespace rrlab::cfrac
