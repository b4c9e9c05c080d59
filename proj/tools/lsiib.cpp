#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lsiib/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Raman transfer and blockade simulator for driven atomic ensembles"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  unsigned threads = 0;

  CLI::App* run = app.add_subcommand("run", "Run a scenario and write outputs");
  run->add_option("--config", config_path, "Path to a key=value config file")
      ->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run->add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "Worker threads for sweeps (0 = auto)");

  CLI::App* derive =
      app.add_subcommand("derive", "Print derived quantities for a config");
  derive->add_option("--config", config_path, "Path to a key=value config file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return lsiib::guarded_main([&]() {
    const lsiib::RunConfig cfg = lsiib::load_run_config(config_path);
    if (run->parsed()) {
      lsiib::CliOverrides overrides;
      overrides.out_dir = out_dir;
      overrides.format = format;
      overrides.threads = threads;
      overrides.config_path = config_path;
      return lsiib::execute_run(cfg, overrides);
    }
    return lsiib::execute_derive(cfg, std::cout);
  });
}
