#include <CLI11/CLI11.hpp>
#include <iostream>

#include "config.hpp"
#include "runner.hpp"

namespace {

const char* const kSubcommands[] = {"schur-catalog", "trace", "diverge", "ten-limits", "general-probe",
                                    "lipschitz", "growth", "k-rate", "perturb", "outside",
                                    "mod-pattern", "build-point", "sample-measure", "verify-all"};

}  // namespace

int main(int argc, char** argv) {
  using namespace rrlab::tools;

  CLI::App app{"rrlab: Rogers-Ramanujan continued fraction experiment runner"};
  app.footer("rrlab --print-schema prints the config schema.");
  app.require_subcommand(1);
  app.set_version_flag("--version", "rrlab 0.3.0");

  std::string config_path;
  Overrides over;
  long bits = 0;
  std::string out, profile;
  std::uint64_t seed = 0;

  if (argc == 2 && std::string(argv[1]) == "--print-schema") {
    std::cout << config_schema().dump(2) << "\n";
    return kExitOk;
  }
  for (const char* name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--precision-bits", bits, "Working precision in bits");
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--seed", seed, "RNG seed");
    if (std::string(name) == "verify-all") sub->add_option("--profile", profile, "quick or full");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigInvalid;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    over.subcommand = sub->get_name();
    if (sub->count("--precision-bits")) over.precision_bits = bits;
    if (sub->count("--out")) over.out = out;
    if (sub->count("--seed")) over.seed = seed;
    if (sub->get_option_no_throw("--profile") && sub->count("--profile")) over.profile = profile;

    ExperimentConfig cfg = config_path.empty() ? load_config(nlohmann::json::object(), over)
                                               : load_config_file(config_path, over);
    return run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "rrlab: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
