#include "binexp/cli.hpp"

#include "binexp/errors.hpp"
#include "binexp/intops.hpp"
#include "binexp/trace.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string_view>

namespace binexp::cli {

namespace {

std::uint64_t parse_integer(const std::string& text, std::string_view what) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw UsageError(std::string(what) + ": expected a non-negative integer, got '" + text +
                         "'");
    }
    return value;
}

double parse_real(const std::string& text, std::string_view what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    // from_chars does not take a leading '+'.
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (first == last || ec != std::errc{} || ptr != last) {
        throw UsageError(std::string(what) + ": expected a real number, got '" + text + "'");
    }
    return value;
}

std::size_t arity(Subcommand s) {
    switch (s) {
    case Subcommand::mul:
    case Subcommand::divmod:
    case Subcommand::log:
        return 2;
    case Subcommand::sqrt:
    case Subcommand::briggs:
        return 1;
    case Subcommand::pow:
        return 3;
    }
    return 0;
}

const char* name_of(Subcommand s) {
    switch (s) {
    case Subcommand::mul:
        return "mul";
    case Subcommand::divmod:
        return "divmod";
    case Subcommand::sqrt:
        return "sqrt";
    case Subcommand::pow:
        return "pow";
    case Subcommand::log:
        return "log";
    case Subcommand::briggs:
        return "briggs";
    }
    return "?";
}

void check_operands(const CliInvocation& inv) {
    const std::size_t n = inv.operands.size();
    if (inv.subcommand == Subcommand::pow) {
        if (inv.exponent ? n != 1 : n != 3) {
            throw UsageError("pow: expected 'pow A P Q' or 'pow A --exp T'");
        }
        return;
    }
    if (inv.exponent) {
        throw UsageError(std::string("--exp: only valid with pow"));
    }
    if (n != arity(inv.subcommand)) {
        throw UsageError(std::string(name_of(inv.subcommand)) + ": expected " +
                         std::to_string(arity(inv.subcommand)) + " operand(s), got " +
                         std::to_string(n));
    }
}

struct Outcome {
    std::string result;
    TraceLog trace;
};

Outcome compute(const CliInvocation& inv) {
    const auto& ops = inv.operands;
    const auto& cfg = inv.config;
    Outcome o;
    switch (inv.subcommand) {
    case Subcommand::mul: {
        const auto a = parse_integer(ops[0], "operand A");
        const auto b = parse_integer(ops[1], "operand B");
        o.result = std::to_string(egyptian_mul(a, b, &o.trace));
        break;
    }
    case Subcommand::divmod: {
        const auto a = parse_integer(ops[0], "operand A");
        const auto d = parse_integer(ops[1], "operand D");
        const QuotRem qr = div_qr(a, d, &o.trace);
        o.result = std::to_string(qr.quotient) + " " + std::to_string(qr.remainder);
        break;
    }
    case Subcommand::sqrt:
        o.result = format_real(heron_sqrt(parse_real(ops[0], "operand A"), cfg, &o.trace));
        break;
    case Subcommand::pow: {
        const double a = parse_real(ops[0], "operand A");
        if (inv.exponent) {
            const double t = parse_real(*inv.exponent, "--exp");
            o.result = format_real(pow_real(a, t, cfg, &o.trace));
        } else {
            const RationalExponent e{parse_integer(ops[1], "operand P"),
                                     parse_integer(ops[2], "operand Q")};
            if (e.q == 0) {
                throw UsageError("operand Q: must be positive");
            }
            o.result = format_real(pow_rational(a, e, cfg, &o.trace));
        }
        break;
    }
    case Subcommand::log: {
        const double b = parse_real(ops[0], "operand B");
        const double a = parse_real(ops[1], "operand A");
        o.result = format_real(log_base(b, a, cfg, &o.trace).value);
        break;
    }
    case Subcommand::briggs:
        o.result = std::to_string(
            briggs_chain(parse_real(ops[0], "operand B"), inv.sqrt_mode, cfg, &o.trace).count());
        break;
    }
    return o;
}

// Operands are all parsed before compute() touches them.
void validate_operands(const CliInvocation& inv) {
    const auto& ops = inv.operands;
    switch (inv.subcommand) {
    case Subcommand::mul:
    case Subcommand::divmod:
        parse_integer(ops[0], "operand A");
        parse_integer(ops[1], inv.subcommand == Subcommand::mul ? "operand B" : "operand D");
        break;
    case Subcommand::pow:
        parse_real(ops[0], "operand A");
        if (inv.exponent) {
            parse_real(*inv.exponent, "--exp");
        } else {
            parse_integer(ops[1], "operand P");
            parse_integer(ops[2], "operand Q");
        }
        break;
    case Subcommand::log:
        parse_real(ops[0], "operand B");
        parse_real(ops[1], "operand A");
        break;
    case Subcommand::sqrt:
        parse_real(ops[0], "operand A");
        break;
    case Subcommand::briggs:
        parse_real(ops[0], "operand B");
        break;
    }
}

} // namespace

std::optional<CliInvocation> parse(std::span<const std::string> args, std::ostream& out) {
    CLI::App app{"Binary-expansion arithmetic: doubling/halving and squaring/square-rooting",
                 "binexp"};
    app.require_subcommand(1);
    app.fallthrough();

    CliInvocation inv;
    std::string trace = "off";
    std::string sqrt_mode = "correctly_rounded";
    bool paper_faithful = false;
    app.add_option("--trace", trace, "Step trace: off, text or json")
        ->check(CLI::IsMember({"off", "text", "json"}));
    app.add_option("--heron-eps", inv.config.heron_eps, "Heron stopping threshold");
    app.add_option("--pow-eps", inv.config.pow_eps, "Power loops stop when |a - 1| < eps");
    app.add_option("--max-iterations", inv.config.max_iterations, "Cap on any single loop");
    app.add_flag("--paper-faithful", paper_faithful,
                 "Absolute Heron stopping test |x - x'| < eps instead of the relative one");
    app.add_option("--sqrt-mode", sqrt_mode, "briggs: correctly_rounded or heron")
        ->check(CLI::IsMember({"correctly_rounded", "heron"}));

    struct Entry {
        Subcommand sub;
        const char* help;
        CLI::App* app = nullptr;
    };
    std::vector<Entry> entries{
        {Subcommand::mul, "A B: product by doubling A along the binary digits of B"},
        {Subcommand::divmod, "A D: quotient and remainder by doubling and halving D"},
        {Subcommand::sqrt, "A: Heron square root"},
        {Subcommand::pow, "A P Q: A^(P/Q); or A --exp T: A^T"},
        {Subcommand::log, "B A: binary digits of log_B(A), 1 <= A < B"},
        {Subcommand::briggs, "B: count of successive square roots of B above 1"},
    };
    std::optional<std::string> exponent;
    for (auto& e : entries) {
        e.app = app.add_subcommand(name_of(e.sub), e.help);
        e.app->add_option("operands", inv.operands, "Operands")->allow_extra_args();
        if (e.sub == Subcommand::pow) {
            e.app->add_option("--exp", exponent, "Real exponent T");
        }
    }

    // CLI11 wants argv-style input in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (const auto& e : entries) {
        if (e.app->parsed()) {
            inv.subcommand = e.sub;
        }
    }
    inv.exponent = exponent;
    inv.trace = trace == "text" ? TraceFormat::text
              : trace == "json" ? TraceFormat::json
                                : TraceFormat::off;
    inv.sqrt_mode = sqrt_mode == "heron" ? SqrtMode::heron : SqrtMode::correctly_rounded;
    inv.config.heron_relative_mode = !paper_faithful;

    if (!(inv.config.heron_eps > 0.0) || !std::isfinite(inv.config.heron_eps)) {
        throw UsageError("--heron-eps: must be positive and finite");
    }
    if (!(inv.config.pow_eps > 0.0) || !std::isfinite(inv.config.pow_eps)) {
        throw UsageError("--pow-eps: must be positive and finite");
    }
    if (inv.config.max_iterations < 1) {
        throw UsageError("--max-iterations: must be at least 1");
    }
    check_operands(inv);
    validate_operands(inv);
    return inv;
}

int execute(const CliInvocation& invocation, std::ostream& out, std::ostream& err) {
    try {
        Outcome o = compute(invocation);
        switch (invocation.trace) {
        case TraceFormat::off:
            out << o.result << '\n';
            break;
        case TraceFormat::text:
            out << o.result << '\n' << render_text(o.trace);
            break;
        case TraceFormat::json:
            out << to_json(o.trace) << '\n';
            break;
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return kOverflow;
    } catch (const NonConvergenceError& e) {
        err << "no convergence: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    std::optional<CliInvocation> inv;
    try {
        inv = parse(args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (!inv) {
        return kOk;
    }
    return execute(*inv, out, err);
}

} // namespace binexp::cli
