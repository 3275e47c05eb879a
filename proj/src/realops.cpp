#include "binexp/realops.hpp"

#include "binexp/errors.hpp"
#include "binexp/invariant.hpp"
#include "binexp/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace binexp {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxLogDigits = 53;

void add_config(TraceLog& trace, const ToleranceConfig& cfg) {
    trace.add_config("heron_eps", cfg.heron_eps);
    trace.add_config("pow_eps", cfg.pow_eps);
    trace.add_config("max_iterations", static_cast<std::uint64_t>(cfg.max_iterations));
    trace.add_config("heron_relative_mode", cfg.heron_relative_mode);
}

void require_positive_finite(double a, const char* op) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError(std::string(op) + ": base must be positive and finite, got " +
                          format_real(a));
    }
}

double checked_square(double a, std::size_t step) {
    const double sq = a * a;
    if (!std::isfinite(sq) || sq == 0.0) {
        throw OverflowError("squaring the base leaves the binary64 range", step);
    }
    return sq;
}

double checked_product(double z, double a, std::size_t step) {
    const double prod = z * a;
    if (!std::isfinite(prod) || prod == 0.0) {
        throw OverflowError("accumulated power leaves the binary64 range", step);
    }
    return prod;
}

bool near_one(double a, double eps) { return 1.0 - eps < a && a < 1.0 + eps; }

// a0^t0 = z * a^t, compared in the log domain. The tolerance is 1e-9
// relative on the power, widened only for exponents large enough that the
// squarings alone exceed it.
struct PowInvariant {
    long double log_target;
    long double tolerance;

    PowInvariant(double a0, long double t0)
        : log_target(t0 * std::log(static_cast<long double>(a0))),
          tolerance(std::max<long double>(1e-9L, 8.0L * kEpsilon * t0)) {}

    [[maybe_unused]] bool holds(double z, double a, long double t) const {
        const long double lhs =
            std::log(static_cast<long double>(z)) + t * std::log(static_cast<long double>(a));
        return std::fabs(lhs - log_target) <= tolerance;
    }
};

long double ratio(std::uint64_t p, std::uint64_t q) {
    return static_cast<long double>(p) / static_cast<long double>(q);
}

void check_iteration_cap(std::size_t iterations, const ToleranceConfig& cfg, const char* what) {
    if (iterations >= cfg.max_iterations) {
        throw NonConvergenceError(what, iterations);
    }
}

} // namespace

void RationalExponent::validate() const {
    if (q == 0) {
        throw DomainError("exponent denominator must be positive");
    }
}

void ToleranceConfig::validate() const {
    if (!(heron_eps > 0.0) || !std::isfinite(heron_eps)) {
        throw DomainError("heron_eps must be positive and finite");
    }
    if (!(pow_eps > 0.0) || !std::isfinite(pow_eps)) {
        throw DomainError("pow_eps must be positive and finite");
    }
    if (max_iterations < 1) {
        throw DomainError("max_iterations must be at least 1");
    }
}

HeronResult heron(double a, const ToleranceConfig& cfg, TraceLog* trace) {
    cfg.validate();
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw DomainError("heron_sqrt: argument must be finite and non-negative, got " +
                          format_real(a));
    }
    if (trace) {
        trace->reset(Algorithm::heron);
        trace->add_input("a", a);
        add_config(*trace, cfg);
    }

    HeronResult result;
    if (a == 0.0) {
        if (trace) {
            trace->add_result("value", 0.0);
            trace->add_result("iterations", std::uint64_t{0});
        }
        return result;
    }

    double x = 1.0;
    for (std::size_t n = 1; n <= cfg.max_iterations; ++n) {
        const double next = (x + a / x) / 2.0;
        const double diff = x - next;
        x = next;
        if (trace) {
            trace->record({x, diff});
        }
        const bool converged = cfg.heron_relative_mode ? std::fabs(diff) <= cfg.heron_eps * x
                                                       : std::fabs(diff) < cfg.heron_eps;
        if (converged) {
            result.root = x;
            result.iterations = n;
            if (trace) {
                trace->add_result("value", x);
                trace->add_result("iterations", static_cast<std::uint64_t>(n));
            }
            return result;
        }
    }
    throw NonConvergenceError("heron_sqrt(" + format_real(a) + ") did not converge",
                              cfg.max_iterations);
}

double heron_sqrt(double a, const ToleranceConfig& cfg, TraceLog* trace) {
    return heron(a, cfg, trace).root;
}

double pow_rational(double a, RationalExponent e, const ToleranceConfig& cfg, TraceLog* trace) {
    cfg.validate();
    e.validate();
    require_positive_finite(a, "pow_rational");
    if (trace) {
        trace->reset(Algorithm::pow_rational);
        trace->add_input("a", a);
        trace->add_input("p", e.p);
        trace->add_input("q", e.q);
        add_config(*trace, cfg);
    }

    const PowInvariant invariant(a, ratio(e.p, e.q));
    std::uint64_t p = e.p;
    std::uint64_t q = e.q;
    double z = 1.0;
    const auto emit = [&](PowAction action) {
        if (trace) {
            trace->record({static_cast<std::uint64_t>(action), a, p, q, z});
        }
    };

    std::size_t step = 0;
    while (p > q) {
        check_iteration_cap(step, cfg, "pow_rational: exponent reduction");
        ++step;
        PowAction action;
        if (p % 2 == 0) {
            p /= 2;
            action = PowAction::square_halve_p;
        } else {
            if (q > std::numeric_limits<std::uint64_t>::max() / 2) {
                throw OverflowError("pow_rational: doubling q exceeds 64 bits", step);
            }
            q *= 2;
            action = PowAction::square_double_q;
        }
        a = checked_square(a, step);
        emit(action);
        BINEXP_INVARIANT(invariant.holds(z, a, ratio(p, q)), "a0^(p0/q0) = z*a^(p/q)");
    }

    for (std::size_t iter = 0;; ++iter) {
        check_iteration_cap(iter, cfg, "pow_rational: root/accumulate loop");
        ++step;
        if (near_one(a, cfg.pow_eps)) {
            emit(PowAction::done_near_one);
            break;
        }
        if (p == q) {
            z = checked_product(z, a, step);
            emit(PowAction::done_exact);
            BINEXP_INVARIANT(invariant.holds(z, 1.0, 0.0L), "a0^(p0/q0) = z");
            break;
        }
        if (p < q) {
            a = heron_sqrt(a, cfg);
            if (p > std::numeric_limits<std::uint64_t>::max() / 2) {
                throw OverflowError("pow_rational: doubling p exceeds 64 bits", step);
            }
            p *= 2;
            emit(PowAction::take_root);
        } else {
            p -= q;
            z = checked_product(z, a, step);
            emit(PowAction::accumulate);
        }
        BINEXP_INVARIANT(invariant.holds(z, a, ratio(p, q)), "a0^(p0/q0) = z*a^(p/q)");
    }

    if (trace) {
        trace->add_result("value", z);
    }
    return z;
}

double pow_real(double a, double t, const ToleranceConfig& cfg, TraceLog* trace) {
    cfg.validate();
    require_positive_finite(a, "pow_real");
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("pow_real: exponent must be finite and non-negative, got " +
                          format_real(t));
    }
    if (trace) {
        trace->reset(Algorithm::pow_real);
        trace->add_input("a", a);
        trace->add_input("t", t);
        add_config(*trace, cfg);
    }

    const PowInvariant invariant(a, t);
    double z = 1.0;
    const auto emit = [&](PowAction action) {
        if (trace) {
            trace->record({static_cast<std::uint64_t>(action), a, t, z});
        }
    };

    std::size_t step = 0;
    while (t > 1.0) {
        check_iteration_cap(step, cfg, "pow_real: exponent reduction");
        ++step;
        t = t / 2;
        a = checked_square(a, step);
        emit(PowAction::square_halve_t);
        BINEXP_INVARIANT(invariant.holds(z, a, t), "a0^t0 = z*a^t");
    }

    // t <= 1 from here on; it moves around 1 while a is driven to 1.
    for (std::size_t iter = 0; a < 1.0 - cfg.pow_eps || 1.0 + cfg.pow_eps < a; ++iter) {
        check_iteration_cap(iter, cfg, "pow_real: root/accumulate loop");
        ++step;
        if (t >= 1.0) {
            t = t - 1.0;
            z = checked_product(z, a, step);
            emit(PowAction::accumulate);
            BINEXP_INVARIANT(invariant.holds(z, a, t), "a0^t0 = z*a^t");
        }
        if (t < 1.0) {
            t = 2 * t;
            a = heron_sqrt(a, cfg);
            emit(PowAction::take_root);
            BINEXP_INVARIANT(invariant.holds(z, a, t), "a0^t0 = z*a^t");
        }
    }
    emit(PowAction::done_near_one);

    if (trace) {
        trace->add_result("value", z);
    }
    return z;
}

BinaryFraction log_base(double b, double a, const ToleranceConfig& cfg, TraceLog* trace) {
    cfg.validate();
    if (!(b > 1.0) || !std::isfinite(b)) {
        throw DomainError("log_base: base must be finite and greater than 1, got " +
                          format_real(b));
    }
    if (!(a >= 1.0 && a < b)) {
        throw DomainError("log_base: requires 1 <= a < b, got a = " + format_real(a) +
                          ", b = " + format_real(b));
    }
    if (trace) {
        trace->reset(Algorithm::log_base);
        trace->add_input("b", b);
        trace->add_input("a", a);
        add_config(*trace, cfg);
    }

    [[maybe_unused]] const long double log_b0 = std::log(static_cast<long double>(b));
    BinaryFraction out;
    double z = 1.0;
    double frac = 1.0;
    double x = 0.0;
    std::uint64_t k = 0;
    while (b > 1.0) {
        b = heron_sqrt(b, cfg);
        frac /= 2;
        ++k;
        // Chain exhausted: b^(2^-k) rounds to 1 and x cannot grow further.
        if (!(b > 1.0)) {
            break;
        }
        const bool digit = z * b <= a;
        if (digit) {
            z *= b;
            x += frac;
        }
        out.digits.push_back(digit ? 1 : 0);
        BINEXP_INVARIANT(frac == std::ldexp(1.0, -static_cast<int>(k)), "frac = 2^-k");
        BINEXP_INVARIANT(z <= a, "z <= a");
        BINEXP_INVARIANT(std::fabs(std::log(static_cast<long double>(z)) - x * log_b0) <= 1e-12L,
                         "log_b z = sum_{i<=k} d_i 2^-i");
        if (trace) {
            trace->record({k, b, frac, digit, z, x});
        }
        if (out.digits.size() == kMaxLogDigits) {
            break;
        }
    }

    out.value = x;
    if (trace) {
        trace->add_result("value", x);
        trace->add_result("digits", static_cast<std::uint64_t>(out.digits.size()));
    }
    return out;
}

BriggsChain briggs_chain(double b, SqrtMode mode, const ToleranceConfig& cfg, TraceLog* trace) {
    cfg.validate();
    if (!(b > 1.0) || !std::isfinite(b)) {
        throw DomainError("briggs_chain: base must be finite and greater than 1, got " +
                          format_real(b));
    }
    if (trace) {
        trace->reset(Algorithm::briggs);
        trace->add_input("b", b);
        trace->add_input("heron_mode", mode == SqrtMode::heron);
        add_config(*trace, cfg);
    }

    const auto root = [&](double v) {
        return mode == SqrtMode::heron ? heron_sqrt(v, cfg) : std::sqrt(v);
    };

    BriggsChain chain;
    chain.base = b;
    for (double v = root(b); v > 1.0; v = root(v)) {
        check_iteration_cap(chain.values.size(), cfg, "briggs_chain");
        chain.values.push_back(v);
        if (trace) {
            trace->record({static_cast<std::uint64_t>(chain.values.size()), v});
        }
    }

    if (trace) {
        trace->add_result("count", static_cast<std::uint64_t>(chain.count()));
    }
    return chain;
}

} // namespace binexp
