// Command-line front end: evolve, steady, sweep, check.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commonbath/commands.hpp"

int main(int argc, char** argv) {
  using namespace commonbath;

  CLI::App app{"Dissipative dynamics of two qubits in a common bath"};
  app.require_subcommand(1);

  std::string config_path, out_path, param, values;
  bool numeric_only = false;

  auto* evolve = app.add_subcommand("evolve", "Integrate the master equation and write a trajectory CSV");
  evolve->add_option("--config", config_path, "JSON run configuration")->required();
  evolve->add_option("--out", out_path, "Output CSV path")->required();

  auto* steady = app.add_subcommand("steady", "Print the stationary structure and asymptotic entanglement");
  steady->add_option("--config", config_path, "JSON run configuration")->required();
  steady->add_flag("--numeric-only", numeric_only, "Use only the null-space solver");

  auto* sweep = app.add_subcommand("sweep", "Asymptotic concurrence over a parameter grid");
  sweep->add_option("--config", config_path, "JSON run configuration")->required();
  sweep->add_option("--param", param, "tau | B | s | lambda_1 | lambda_2 | lambda_3")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  auto* check = app.add_subcommand("check", "Run the invariant suites (seed from TOOL_SEED)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the configuration exit code.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (evolve->parsed()) return cmd_evolve(config_path, out_path, std::cerr);
  if (steady->parsed()) return cmd_steady(config_path, numeric_only, std::cout, std::cerr);
  if (sweep->parsed()) return cmd_sweep(config_path, param, values, out_path, std::cerr);
  if (check->parsed()) {
    CheckOptions options;
    options.seed = seed_from_env();
    return cmd_check(options, std::cout);
  }
  return kExitConfig;
}
