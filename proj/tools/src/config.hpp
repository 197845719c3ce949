#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "rrlab/bigarith.hpp"

namespace rrlab::tools {

enum class Profile { Quick, Full };

Profile profile_from(const std::string& name);
const char* profile_name(Profile p);

nlohmann::json config_schema();

struct ExperimentConfig {
  nlohmann::json raw;  // validated document, flag overrides applied
  std::string subcommand;
  PrecisionContext ctx;
  std::uint64_t seed = 1;
  std::filesystem::path out = "rrlab-out";
  Profile profile = Profile::Quick;

  bool has(const char* key) const { return raw.contains(key); }
  long get_long(const char* key, long fallback) const;
  std::string get_string(const char* key, const std::string& fallback) const;
  // 64-bit FNV-1a of the canonical dump of raw, without the output path.
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

struct Overrides {
  std::optional<std::string> subcommand;
  std::optional<long> precision_bits;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> profile;
};

// Throws ConfigInvalid listing every schema violation.
ExperimentConfig load_config(nlohmann::json doc, const Overrides& over = {});
ExperimentConfig load_config_file(const std::filesystem::path& path, const Overrides& over = {});

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace rrlab::tools
