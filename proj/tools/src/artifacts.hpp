#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "config.hpp"

namespace rrlab::tools {

// Writes artifacts under one directory, each with a <name>.meta.json sidecar
// carrying the config hash and precision. Nothing time-dependent is written.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, const ExperimentConfig& cfg);

  void write_text(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  const std::vector<std::string>& written() const { return written_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string subcommand_;
  std::string hash_;
  PrecisionContext ctx_;
  std::uint64_t seed_;
  std::vector<std::string> written_;
};

}  // namespace rrlab::tools
