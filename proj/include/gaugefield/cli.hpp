#ifndef GAUGEFIELD_CLI_HPP
#define GAUGEFIELD_CLI_HPP

#include <iosfwd>
#include <string>

#include "gaugefield/io.hpp"
#include "gaugefield/verify.hpp"

namespace gaugefield
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_config_error = 2,
  exit_numerical_failure = 3
};

// Each command writes its table or document to cfg.output.path, or to out
// when the path is empty; diagnostics go to err. The return value is the
// process exit code.
int cmd_potential(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_abphase(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_solenoid(const RunConfig &cfg, std::ostream &out, std::ostream &err);

// Loads the config file, applies an --out override (empty: none) and
// dispatches on the command name.
int run_command(const std::string &command, const std::string &config_path, const std::string &out_path,
                std::ostream &out, std::ostream &err);

// The checks of cfg.checks in fixed order; throws ConfigError when a check
// needs a source the config does not provide.
VerificationReport run_checks(const RunConfig &cfg);

} // namespace gaugefield

#endif // GAUGEFIELD_CLI_HPP
