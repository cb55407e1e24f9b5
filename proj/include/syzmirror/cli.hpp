#ifndef SYZMIRROR_CLI_HPP
#define SYZMIRROR_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <syzmirror/serialize.hpp>

namespace syzmirror::cli
{

enum ExitCode : int {
    Success = 0,
    Failure = 1,
    ValidationFailure = 2,
    PreconditionFailure = 3,
    ParseFailure = 4,
};

struct CommandOptions {
    std::optional<int> order;
    std::optional<bool> corrected;
    std::optional<std::pair<int, int>> normalization;
};

struct CommandResult {
    int exit_code = Success;
    io::json output;
    std::string pretty;
};

const std::vector<std::string> &command_names();

// Runs one command on a JSON job document. Never throws; failures become an
// {"error": {...}} record with the matching exit code.
CommandResult run_command(const std::string &command, std::string_view document, const CommandOptions &options = {});

// Full command line: argv[0] is the program name.
int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace syzmirror::cli

#endif
