// bosegas - finite-n bosonic ensembles, their reduced densities, and their
// large-n limit mixtures.  All structural input comes from a JSON config;
// flags only override the reproducibility knobs.

#include <atomic>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bosegas/cli.hpp"
#include "bosegas/errors.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-n bosonic Gibbs ensembles and their de Finetti limits"};
  app.require_subcommand(1);

  std::string config_path;
  std::string verify_what;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> samples_override;
  std::optional<std::string> out_override;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "JSON config file")->required();
    cmd->add_option("--seed", seed_override, "override mc.seed");
    cmd->add_option("--samples", samples_override, "override mc.samples");
    cmd->add_option("--out", out_override, "override output.path");
  };

  add_common(app.add_subcommand("reduce", "reduce a finite-n ensemble to m particles"));
  add_common(app.add_subcommand("limit", "compute an exact limit density"));
  add_common(app.add_subcommand("sweep", "trace-distance sweep of reductions against a limit"));
  add_common(app.add_subcommand("sample", "Monte Carlo moment estimate over simplex x torus"));
  CLI::App* verify = app.add_subcommand("verify", "run a verification experiment");
  verify->add_option("what", verify_what, "claim | series | free-energy")->required();
  add_common(verify);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  std::signal(SIGINT, handle_sigint);

  try {
    bosegas::cli::RunConfig config = bosegas::cli::load_config(config_path);
    if (config.command != command) {
      std::cerr << "error [" << config_path << "]: config command '" << config.command
                << "' does not match invoked command '" << command << "'\n";
      return bosegas::cli::kExitValidation;
    }
    if (command == "verify" && config.verify.what != verify_what) {
      std::cerr << "error [" << config_path << "]: config verifies '" << config.verify.what
                << "' but '" << verify_what << "' was requested\n";
      return bosegas::cli::kExitValidation;
    }
    if (seed_override) config.mc.seed = *seed_override;
    if (samples_override) config.mc.samples = *samples_override;
    if (out_override) config.output.path = *out_override;

    const bosegas::cli::RunOutcome outcome = bosegas::cli::run(config, &g_interrupted);
    for (const std::string& path : outcome.outputs) std::cout << path << "\n";
    return outcome.exit_code;
  } catch (const bosegas::ValidationError& e) {
    std::cerr << "error [" << config_path << "]: " << e.what() << "\n";
    return bosegas::cli::kExitValidation;
  } catch (const bosegas::CapacityError& e) {
    std::cerr << "error [" << config_path << "]: " << e.what() << "\n";
    return bosegas::cli::kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error [" << config_path << "]: " << e.what() << "\n";
    return 1;
  }
}
