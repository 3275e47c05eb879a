#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace binexp {

class TraceLog;

/// Exponent p/q of a^(p/q); p >= 0, q >= 1.
struct RationalExponent {
    std::uint64_t p = 0;
    std::uint64_t q = 1;

    /// Throws DomainError when q == 0.
    void validate() const;
};

struct ToleranceConfig {
    /// Heron stopping threshold on |x_n - x_{n+1}|, relative to x_{n+1}
    /// unless heron_relative_mode is off.
    double heron_eps = 1.0e-16;
    /// Power loops stop once the base is within pow_eps of 1.
    double pow_eps = 1.0e-14;
    /// Cap on the iterations of any single loop. Heron from x0 = 1 needs
    /// up to ~545 steps over the binary64 range.
    std::size_t max_iterations = 1100;
    /// Off: stop when |x_n - x_{n+1}| < heron_eps, as in the classic C
    /// listing. That test never fires once the spacing of doubles near
    /// sqrt(a) exceeds heron_eps, i.e. for most a >= 1.
    bool heron_relative_mode = true;

    /// Throws DomainError unless both eps are positive and finite and
    /// max_iterations >= 1.
    void validate() const;
};

/// x = sum_{i>=1} d_i 2^-i, at most 53 digits so the sum is exact.
struct BinaryFraction {
    std::vector<std::uint8_t> digits;
    double value = 0.0;

    bool operator==(const BinaryFraction&) const = default;
};

enum class SqrtMode { correctly_rounded, heron };

/// Successive square roots of base, while they still exceed 1.
struct BriggsChain {
    double base = 0.0;
    std::vector<double> values;

    std::size_t count() const noexcept { return values.size(); }
};

struct HeronResult {
    double root = 0.0;
    std::size_t iterations = 0;
};

/// Heron iteration x <- (x + a/x)/2 from x = 1. heron(0) is 0 with no
/// iterations. Throws DomainError for negative or non-finite a and
/// NonConvergenceError when the stopping test is not met within
/// cfg.max_iterations. One trace event per iteration.
HeronResult heron(double a, const ToleranceConfig& cfg = {}, TraceLog* trace = nullptr);

double heron_sqrt(double a, const ToleranceConfig& cfg = {}, TraceLog* trace = nullptr);

/// a^(p/q) by squaring and square-rooting the base while rescaling p and q.
///
/// First loop (p > q): square a, and halve p when it is even or double q
/// otherwise. Second loop: take roots while p < q (doubling p), multiply the
/// accumulator while p > q (p <- p - q), until p == q or a is within
/// cfg.pow_eps of 1. Throughout, a0^(p0/q0) = z * a^(p/q).
///
/// Throws DomainError for a <= 0 or non-finite a, OverflowError when q
/// doubling leaves 64 bits or squaring leaves the binary64 range, and
/// NonConvergenceError on the iteration cap.
double pow_rational(double a, RationalExponent e, const ToleranceConfig& cfg = {},
                    TraceLog* trace = nullptr);

/// a^t for a real exponent t >= 0. Halves t while squaring a until t <= 1,
/// then lets t move around 1: t >= 1 moves a factor into the accumulator,
/// t < 1 doubles t and takes a root. Maintains a0^t0 = z * a^t.
double pow_real(double a, double t, const ToleranceConfig& cfg = {}, TraceLog* trace = nullptr);

/// Binary digits of log_b(a) for 1 <= a < b. Digit k is 1 when
/// z * b^(2^-k) <= a, with b^(2^-k) from the Heron chain of b; stops when
/// that root no longer exceeds 1 or after 53 digits.
BinaryFraction log_base(double b, double a, const ToleranceConfig& cfg = {},
                        TraceLog* trace = nullptr);

/// Chain sqrt(b), sqrt(sqrt(b)), ... while the values exceed 1. Throws
/// DomainError for b <= 1 or non-finite b.
BriggsChain briggs_chain(double b, SqrtMode mode = SqrtMode::correctly_rounded,
                         const ToleranceConfig& cfg = {}, TraceLog* trace = nullptr);

} // namespace binexp
