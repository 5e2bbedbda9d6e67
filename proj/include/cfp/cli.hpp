#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfp {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitViolation = 1, // a hypothesis or bound failed, or the solve did not converge
    kExitError = 2,     // usage, I/O or validation error
};

/// Entry point of the `cfp` tool. args[0] is the program name.
///
///     check <file> | --all <dir>
///     solve <file> [--trace PATH] [--format jsonl|csv] [--no-trace] | --all <dir>
///     chain <file> --from A --to B [--eps E]
///     oracle <file>
///     verify-lemma <file> [--horizon M]
///     gen --seed S --size N [--style random|contractive] [-o PATH]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cfp
