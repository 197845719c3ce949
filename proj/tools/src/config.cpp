#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rrlab/config_schema.hpp"
#include "rrlab/errors.hpp"
#include "schema_check.hpp"

namespace rrlab::tools {

Profile profile_from(const std::string& name) {
  if (name == "quick") return Profile::Quick;
  if (name == "full") return Profile::Full;
  throw ConfigInvalid("profile must be 'quick' or 'full', got '" + name + "'");
}

const char* profile_name(Profile p) { return p == Profile::Quick ? "quick" : "full"; }

nlohmann::json config_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(kConfigSchema);
  return schema;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

long ExperimentConfig::get_long(const char* key, long fallback) const {
  return raw.contains(key) ? raw[key].get<long>() : fallback;
}

std::string ExperimentConfig::get_string(const char* key, const std::string& fallback) const {
  return raw.contains(key) ? raw[key].get<std::string>() : fallback;
}

std::uint64_t ExperimentConfig::hash() const {
  nlohmann::json j = raw;
  j.erase("out");
  return fnv1a64(j.dump());
}

std::string ExperimentConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

ExperimentConfig load_config(nlohmann::json doc, const Overrides& over) {
  if (!doc.is_object()) throw ConfigInvalid("config must be a JSON object");
  if (over.subcommand) doc["subcommand"] = *over.subcommand;
  if (over.precision_bits) doc["precision_bits"] = *over.precision_bits;
  if (over.out) doc["out"] = *over.out;
  if (over.seed) doc["seed"] = *over.seed;
  if (over.profile) doc["profile"] = *over.profile;

  auto errs = schema_errors(config_schema(), doc);
  if (!errs.empty()) {
    std::string msg = "config does not match the rrlab-v1 schema:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw ConfigInvalid(msg);
  }

  ExperimentConfig c;
  c.raw = doc;
  c.subcommand = doc["subcommand"].get<std::string>();
  long bits = doc.value("precision_bits", 256L);
  long guard = doc.value("guard_bits", std::max(32L, bits / 8));
  if (guard >= bits) throw ConfigInvalid("guard_bits must be below precision_bits");
  c.ctx = PrecisionContext(bits, guard);
  c.seed = doc.value("seed", std::uint64_t{1});
  c.out = doc.value("out", std::string("rrlab-out"));
  if (doc.contains("profile")) c.profile = profile_from(doc["profile"].get<std::string>());

  if (doc.contains("m_min") && doc.contains("m_max") && doc["m_min"].get<long>() > doc["m_max"].get<long>())
    throw ConfigInvalid("m_min must not exceed m_max");
  if (doc.contains("point")) {
    const auto& p = doc["point"];
    bool angle = p.contains("angle"), disk = p.contains("re") || p.contains("im");
    if (angle == disk) throw ConfigInvalid("point needs either 'angle' or 're'/'im', not both");
  }
  return c;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, const Overrides& over) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigInvalid(path.string() + ": " + e.what());
  }
  return load_config(std::move(doc), over);
}

}  // namespace rrlab::tools
