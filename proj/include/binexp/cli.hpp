#pragma once

#include "binexp/realops.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace binexp::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDomain = 2,
    kOverflow = 3,
    kNonConvergence = 4,
    kInternal = 5,
};

enum class Subcommand { mul, divmod, sqrt, pow, log, briggs };
enum class TraceFormat { off, text, json };

struct CliInvocation {
    Subcommand subcommand = Subcommand::mul;
    std::vector<std::string> operands;
    /// Real exponent of `pow A --exp T`.
    std::optional<std::string> exponent;
    TraceFormat trace = TraceFormat::off;
    ToleranceConfig config;
    SqrtMode sqrt_mode = SqrtMode::correctly_rounded;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses argv without the program name. Throws UsageError naming the
/// offending flag or operand. Returns nullopt after printing --help to out.
std::optional<CliInvocation> parse(std::span<const std::string> args, std::ostream& out);

/// Runs a parsed invocation; returns the process exit code.
int execute(const CliInvocation& invocation, std::ostream& out, std::ostream& err);

/// parse + execute.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace binexp::cli
