#include <CLI11.hpp>

#include <iostream>

#include "specinv/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"specinv: numerical experiments on weighted convolution algebras"};
  std::string subcommand, config_path, out_dir;
  std::int64_t seed = -1;
  bool json = false, csv = false, quiet = false;
  app.add_option("subcommand", subcommand,
                 "growth | gauge | specrad | cstar | wiener | smoothk | verify | katznelson | "
                 "pytlik | derivation | all")
      ->required();
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory, overrides the config");
  app.add_option("--seed", seed, "RNG seed, overrides the config");
  app.add_flag("--json", json, "print the JSON document to stdout");
  app.add_flag("--csv", csv, "emit CSV tables next to the JSON artifact");
  app.add_flag("--quiet", quiet, "suppress the summary lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    specinv::ExperimentConfig cfg = specinv::parse_config_file(config_path);
    specinv::RunFlags flags;
    flags.out_override = out_dir;
    if (seed >= 0) flags.seed_override = static_cast<std::uint64_t>(seed);
    flags.json_stdout = json;
    flags.csv = csv;
    flags.quiet = quiet;
    return specinv::run_experiment(subcommand, cfg, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
