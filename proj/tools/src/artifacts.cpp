#include "artifacts.hpp"

#include <fstream>

#include "rrlab/errors.hpp"

namespace rrlab::tools {

namespace {

void put(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, const ExperimentConfig& cfg)
    : dir_(std::move(dir)), subcommand_(cfg.subcommand), hash_(cfg.hash_hex()), ctx_(cfg.ctx), seed_(cfg.seed) {
  std::filesystem::create_directories(dir_);
}

void ArtifactWriter::write_text(const std::string& name, const std::string& content) {
  put(dir_ / name, content);
  nlohmann::json meta = {
      {"schema", "rrlab-v1"},
      {"kind", "artifact-meta"},
      {"artifact", name},
      {"subcommand", subcommand_},
      {"config_hash", "fnv1a64:" + hash_},
      {"precision_bits", ctx_.bits},
      {"guard_bits", ctx_.guard_bits},
      {"seed", seed_},
  };
  put(dir_ / (name + ".meta.json"), meta.dump(2) + "\n");
  written_.push_back(name);
}

void ArtifactWriter::write_json(const std::string& name, const nlohmann::json& j) {
  write_text(name, j.dump(2) + "\n");
}

}  // namespace rrlab::tools
