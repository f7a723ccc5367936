#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Windowed Fourier projection solver for 1D wave scattering from point springs"};
  app.require_subcommand(1);
  wfp::cli::CommandArgs args;
  for (const char* name : {"converge", "simulate", "timing", "stability", "spectra"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config, "JSON config file");
    sub->add_option("--seed", args.seed, "RNG seed");
    sub->add_option("--out", args.out, "output directory");
    sub->add_flag("--full", args.full, "apply the config's full-scale overrides");
    sub->callback([&args, name] { args.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : wfp::cli::kExitValidation;
  }
  return wfp::cli::run_command(args, std::cout);
}
