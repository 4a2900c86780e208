// sdlab: run simulations, Picard solves, lattice-count sweeps, X^{s,b}
// diagnostics and the well-posedness classifier from a JSON configuration.

#include <iostream>

#include <CLI11.hpp>

#include "sdlab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Schrödinger-Debye spectral laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SDLAB_CLI_VERSION);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;

  for (const char* name : {"simulate", "picard", "strichartz", "xsb", "classify"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " mode");
    sub->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "root seed (overrides the config)");
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  sdlab::ConfigOverrides overrides;
  overrides.mode = sub->get_name();
  if (sub->count("--out") > 0) overrides.output = out_dir;
  if (sub->count("--seed") > 0) overrides.seed = seed;
  return sdlab::run_file(config_path, overrides, std::cerr);
}
