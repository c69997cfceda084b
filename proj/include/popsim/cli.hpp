#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "popsim/config.hpp"

namespace popsim::cli {

/// Malformed invocation or config file; the message names the offender.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Output path exists but cannot be written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown after -h/--help has already printed; callers exit 0.
struct HelpShown {};

/// One parsed invocation: a subcommand plus the knobs it acts on.
struct CliCommand {
    std::string subcommand;           // run | sweep | verify | bench
    SimConfig base;                   // n is overwritten per entry of sizes
    std::vector<std::uint32_t> sizes; // from --n; run commands hold exactly one
    int trials = 1;
    std::string output;               // empty writes data to stdout
    std::string format = "csv";       // csv | json
    std::string suite = "all";        // verify only
};

/// Translate argv into a validated command.  Throws UsageError on unknown
/// flags, bad values, or a config that fails validation; throws HelpShown
/// after printing help.  Defaults are documented in the help text.
CliCommand parse_args(int argc, const char* const* argv);

/// Execute a parsed command.  Data goes to the output path or stdout,
/// progress to stderr.  Returns 0 on success and 1 when a verify criterion
/// fails.  Throws IoError when the output path cannot be written.
int execute(const CliCommand& cmd);

/// parse_args + execute with the documented exit codes: 0 success (including
/// help), 1 failed criterion or unwritable output, 2 usage error.
int run_cli(int argc, const char* const* argv);

} // namespace popsim::cli
