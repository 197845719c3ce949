#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>

#include "artifacts.hpp"
#include "config.hpp"
#include "rrlab/errors.hpp"
#include "runner.hpp"
#include "schema_check.hpp"

using namespace rrlab;
using namespace rrlab::tools;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("rrlab-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}

}  // namespace

TEST(Config, LoadsAndAppliesDefaults) {
  ExperimentConfig c = load_config(json{{"subcommand", "trace"}, {"point", {{"angle", "1/7"}}}});
  EXPECT_EQ(c.subcommand, "trace");
  EXPECT_EQ(c.ctx.bits, 256);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.profile, Profile::Quick);
}

TEST(Config, OverridesWinOverTheDocument) {
  Overrides o;
  o.precision_bits = 512;
  o.seed = 9;
  o.out = "elsewhere";
  o.profile = "full";
  ExperimentConfig c = load_config(json{{"subcommand", "verify-all"}, {"precision_bits", 128}}, o);
  EXPECT_EQ(c.ctx.bits, 512);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.out, fs::path("elsewhere"));
  EXPECT_EQ(c.profile, Profile::Full);
}

TEST(Config, SchemaViolationsAreConfigInvalid) {
  EXPECT_THROW(load_config(json::object()), ConfigInvalid);
  EXPECT_THROW(load_config(json::array()), ConfigInvalid);
  EXPECT_THROW(load_config(json{{"subcommand", "no-such-thing"}}), ConfigInvalid);
  EXPECT_THROW(load_config(json{{"subcommand", "trace"}, {"precision_bits", "many"}}), ConfigInvalid);
  EXPECT_THROW(load_config(json{{"subcommand", "trace"}, {"unknown_key", 1}}), ConfigInvalid);
  EXPECT_THROW(load_config(json{{"subcommand", "growth"}, {"m_min", 9}, {"m_max", 3}}), ConfigInvalid);
  EXPECT_THROW(load_config(json{{"subcommand", "trace"}, {"point", {{"angle", "1/3"}, {"re", "0"}}}}),
               ConfigInvalid);
  Overrides bad;
  bad.profile = "medium";
  EXPECT_THROW(load_config(json{{"subcommand", "verify-all"}}, bad), ConfigInvalid);
  EXPECT_THROW(load_config_file("/nonexistent/rrlab.json"), ConfigInvalid);
}

TEST(Config, EveryViolationIsListed) {
  auto errs = schema_errors(config_schema(), json{{"precision_bits", "x"}, {"bogus", true}});
  EXPECT_GE(errs.size(), 3u);
}

TEST(Config, ShippedConfigsValidate) {
  for (const auto& e : fs::directory_iterator(RRLAB_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_config_file(e.path())) << e.path();
  }
}

TEST(Config, HashIgnoresOutputPathOnly) {
  json doc{{"subcommand", "growth"}, {"m_max", 12}};
  Overrides a, b;
  a.out = "one";
  b.out = "two";
  EXPECT_EQ(load_config(doc, a).hash(), load_config(doc, b).hash());
  Overrides c;
  c.seed = 3;
  EXPECT_NE(load_config(doc).hash(), load_config(doc, c).hash());
  EXPECT_EQ(load_config(doc).hash_hex().size(), 16u);
}

TEST(Config, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Artifacts, EachFileHasASidecar) {
  fs::path dir = scratch("sidecar");
  ExperimentConfig cfg = load_config(json{{"subcommand", "trace"}, {"point", {{"angle", "1/7"}}}});
  ArtifactWriter w(dir, cfg);
  w.write_text("a.csv", "x\n1\n");
  w.write_json("b.json", json{{"k", 1}});
  EXPECT_EQ(w.written().size(), 2u);
  json meta = json::parse(slurp(dir / "a.csv.meta.json"));
  EXPECT_EQ(meta["artifact"], "a.csv");
  EXPECT_EQ(meta["config_hash"], "fnv1a64:" + cfg.hash_hex());
  EXPECT_EQ(meta["precision_bits"], 256);
  EXPECT_TRUE(fs::exists(dir / "b.json.meta.json"));
  fs::remove_all(dir);
}

TEST(Runner, ExitCodes) {
  EXPECT_EQ(exit_code_for(ConfigInvalid("x")), kExitConfigInvalid);
  EXPECT_EQ(exit_code_for(CapExceeded("x")), kExitCapExceeded);
  EXPECT_EQ(exit_code_for(PrecisionTooLow("x")), kExitPrecisionTooLow);
  EXPECT_EQ(exit_code_for(PreconditionViolation("x")), kExitError);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), kExitError);
}

class ShippedConfig : public ::testing::TestWithParam<const char*> {};

TEST_P(ShippedConfig, RunsCleanlyAndReproducibly) {
  std::string name = GetParam();
  fs::path dir = scratch(name);
  Overrides o;
  o.out = (dir / "first").string();
  ExperimentConfig cfg = load_config_file(fs::path(RRLAB_CONFIG_DIR) / (name + ".json"), o);
  std::ostringstream log;
  EXPECT_EQ(run(cfg, log), kExitOk) << log.str();
  o.out = (dir / "second").string();
  std::ostringstream log2;
  run(load_config_file(fs::path(RRLAB_CONFIG_DIR) / (name + ".json"), o), log2);
  auto first = tree(dir / "first"), second = tree(dir / "second");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, second);
  fs::remove_all(dir);
}

INSTANTIATE_TEST_SUITE_P(Configs, ShippedConfig,
                         ::testing::Values("build_point", "diverge_s_minimal", "diverge_tower", "general_probe",
                                           "growth", "k_rate", "lipschitz", "mod_pattern_alpha", "outside",
                                           "perturb", "sample_measure", "schur_catalog", "ten_limits",
                                           "trace_disk", "trace_root7"),
                         [](const auto& info) { return std::string(info.param); });

TEST(Binary, ExitCodesFromTheCommandLine) {
  fs::path dir = scratch("binary");
  std::string exe = RRLAB_EXE;
  auto code = [](const std::string& cmd) {
    int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(code(exe + " --print-schema"), kExitOk);
  EXPECT_EQ(code(exe + " --version"), kExitOk);
  EXPECT_EQ(code(exe), kExitConfigInvalid);
  EXPECT_EQ(code(exe + " trace --config /nonexistent.json"), kExitConfigInvalid);
  EXPECT_EQ(code(exe + " mod-pattern --config " RRLAB_CONFIG_DIR "/mod_pattern_alpha.json --out " +
                 (dir / "mod").string()),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir / "mod" / "pattern.txt"));
  fs::create_directories(dir);
  fs::path cfg = dir / "deep.json";
  std::ofstream(cfg) << R"({"subcommand": "diverge", "stream": {"kind": "S-minimal"}, "levels": 7})";
  EXPECT_EQ(code(exe + " diverge --config " + cfg.string() + " --out " + (dir / "deep").string()),
            kExitCapExceeded);
  fs::remove_all(dir);
}
