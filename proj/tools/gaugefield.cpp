#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gaugefield/cli.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"Coulomb-gauge potentials from fields, Aharonov-Bohm phases and verification runs"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  for (const char *name : {"potential", "abphase", "verify", "solenoid"})
  {
    CLI::App *sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--out", out, "output file (overrides output.path)");
  }
  app.get_subcommand("potential")->description("A or V at the configured probes, as CSV");
  app.get_subcommand("abphase")->description("circulation and phase around the configured loop, as JSON");
  app.get_subcommand("verify")->description("run the configured checks; JSON report, exit 1 on failure");
  app.get_subcommand("solenoid")->description("closed-form solenoid A_theta and B_z table, as CSV");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gaugefield::exit_config_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return gaugefield::run_command(command, config, out, std::cout, std::cerr);
}
