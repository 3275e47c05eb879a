#include "binexp/errors.hpp"
#include "binexp/trace.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>

namespace binexp {

namespace {

void require(const TraceLog& log, Algorithm expected, const char* renderer) {
    if (log.algorithm() != expected) {
        throw SchemaError(std::string(renderer) + " cannot render a " +
                          std::string(algorithm_name(log.algorithm())) + " log");
    }
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string action_name(std::uint64_t code) {
    switch (static_cast<PowAction>(code)) {
    case PowAction::square_halve_p:
        return "square, p/2";
    case PowAction::square_double_q:
        return "square, 2q";
    case PowAction::square_halve_t:
        return "square, t/2";
    case PowAction::take_root:
        return "root";
    case PowAction::accumulate:
        return "accumulate";
    case PowAction::done_near_one:
        return "done (a ~ 1)";
    case PowAction::done_exact:
        return "done (p = q)";
    }
    return "action " + std::to_string(code);
}

} // namespace

// Layout (v1):
//   "    \ " + power + "  " + value     marked row
//   "      " + power + "  " + value     unmarked row
//   dashes over the full width
//   "Total " + b + "  " + product
std::string render_rhind(const TraceLog& log) {
    require(log, Algorithm::egyptian_mul, "render_rhind");
    const auto b = log.input<std::uint64_t>("b");
    const auto product = log.result_value<std::uint64_t>("product");

    std::size_t w1 = std::to_string(b).size();
    std::size_t w2 = std::to_string(product).size();
    for (const auto& e : log.events()) {
        w1 = std::max(w1, std::to_string(log.field<std::uint64_t>(e, "power")).size());
        w2 = std::max(w2, std::to_string(log.field<std::uint64_t>(e, "value")).size());
    }

    std::string out;
    for (const auto& e : log.events()) {
        out += log.field<bool>(e, "marked") ? "    \\ " : "      ";
        out += pad_left(std::to_string(log.field<std::uint64_t>(e, "power")), w1);
        out += "  ";
        out += pad_left(std::to_string(log.field<std::uint64_t>(e, "value")), w2);
        out += '\n';
    }
    out += std::string(6 + w1 + 2 + w2, '-');
    out += '\n';
    out += "Total " + pad_left(std::to_string(b), w1) + "  " +
           pad_left(std::to_string(product), w2) + '\n';
    return out;
}

std::string render_division(const TraceLog& log) {
    require(log, Algorithm::div_qr, "render_division");
    std::ostringstream os;
    for (const auto& e : log.events()) {
        const auto i = log.field<std::uint64_t>(e, "exponent");
        const auto dd = log.field<std::uint64_t>(e, "multiple");
        const auto before = log.field<std::uint64_t>(e, "residue_before");
        if (log.field<bool>(e, "digit")) {
            os << "d_" << i << " = 1: " << before << " - " << dd << " = "
               << log.field<std::uint64_t>(e, "residue") << '\n';
        } else {
            os << "d_" << i << " = 0: " << before << " < " << dd << '\n';
        }
    }
    return os.str();
}

std::string render_heron(const TraceLog& log) {
    require(log, Algorithm::heron, "render_heron");
    std::string out;
    for (const auto& e : log.events()) {
        out += "x_" + std::to_string(e.step) + " = " + format_real(log.field<double>(e, "x")) +
               "  diff = " + format_real(log.field<double>(e, "step_size")) + '\n';
    }
    return out;
}

std::string render_pow(const TraceLog& log) {
    const bool rational = log.algorithm() == Algorithm::pow_rational;
    if (!rational) {
        require(log, Algorithm::pow_real, "render_pow");
    }
    std::string out;
    for (const auto& e : log.events()) {
        std::string line = pad_left(std::to_string(e.step), 3) + "  " +
                           action_name(log.field<std::uint64_t>(e, "action"));
        line.resize(std::max<std::size_t>(line.size(), 20), ' ');
        line += "  a = " + format_real(log.field<double>(e, "base"));
        if (rational) {
            line += "  p = " + std::to_string(log.field<std::uint64_t>(e, "p")) +
                    "  q = " + std::to_string(log.field<std::uint64_t>(e, "q"));
        } else {
            line += "  t = " + format_real(log.field<double>(e, "exponent"));
        }
        line += "  z = " + format_real(log.field<double>(e, "z"));
        out += line + '\n';
    }
    return out;
}

std::string render_log_digits(const TraceLog& log) {
    require(log, Algorithm::log_base, "render_log_digits");
    std::string out;
    for (const auto& e : log.events()) {
        const auto k = std::to_string(log.field<std::uint64_t>(e, "k"));
        out += "d_" + k + " = " + (log.field<bool>(e, "digit") ? "1" : "0") +
               "  root = " + format_real(log.field<double>(e, "root")) +
               "  frac = " + format_real(log.field<double>(e, "frac")) +
               "  z = " + format_real(log.field<double>(e, "z")) +
               "  x = " + format_real(log.field<double>(e, "x")) + '\n';
    }
    return out;
}

std::string render_briggs(const TraceLog& log) {
    require(log, Algorithm::briggs, "render_briggs");
    std::string out;
    for (const auto& e : log.events()) {
        out += pad_left(std::to_string(log.field<std::uint64_t>(e, "index")), 2) + "  " +
               format_real(log.field<double>(e, "value")) + '\n';
    }
    return out;
}

std::string render_text(const TraceLog& log) {
    switch (log.algorithm()) {
    case Algorithm::egyptian_mul:
        return render_rhind(log);
    case Algorithm::div_qr:
        return render_division(log);
    case Algorithm::heron:
        return render_heron(log);
    case Algorithm::pow_rational:
    case Algorithm::pow_real:
        return render_pow(log);
    case Algorithm::log_base:
        return render_log_digits(log);
    case Algorithm::briggs:
        return render_briggs(log);
    }
    throw SchemaError("unknown algorithm");
}

} // namespace binexp
