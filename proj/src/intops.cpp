#include "binexp/intops.hpp"

#include "binexp/errors.hpp"
#include "binexp/invariant.hpp"
#include "binexp/trace.hpp"

#include <limits>

namespace binexp {

namespace {

__extension__ typedef unsigned __int128 wide;

std::uint64_t checked_add(std::uint64_t x, std::uint64_t y, const char* what, std::size_t step) {
    std::uint64_t sum;
    if (__builtin_add_overflow(x, y, &sum)) {
        throw OverflowError(what, step);
    }
    return sum;
}

[[maybe_unused]] wide mul_wide(std::uint64_t x, std::uint64_t y) {
    return static_cast<wide>(x) * y;
}

} // namespace

BinaryExpansion binary_digits(std::uint64_t n) {
    BinaryExpansion out;
    for (unsigned i = 0; n != 0; ++i, n >>= 1) {
        if (n & 1u) {
            out.bit_positions.push_back(i);
        }
    }
    return out;
}

std::uint64_t reconstruct(const BinaryExpansion& expansion) {
    std::uint64_t n = 0;
    bool first = true;
    unsigned prev = 0;
    for (unsigned i : expansion.bit_positions) {
        if (i >= 64) {
            throw DomainError("bit position " + std::to_string(i) + " exceeds 64-bit width");
        }
        if (!first && i <= prev) {
            throw DomainError("bit positions must be strictly ascending");
        }
        n |= std::uint64_t{1} << i;
        prev = i;
        first = false;
    }
    return n;
}

std::uint64_t egyptian_mul(std::uint64_t a, std::uint64_t b, TraceLog* trace) {
    if (trace) {
        trace->reset(Algorithm::egyptian_mul);
        trace->add_input("a", a);
        trace->add_input("b", b);
    }
    [[maybe_unused]] const wide target = mul_wide(a, b);

    std::uint64_t r = 0;
    std::size_t row = 0;
    while (b > 0) {
        ++row;
        BINEXP_INVARIANT(target == r + mul_wide(a, b), "a0*b0 = r + a*b (row start)");
        const std::uint64_t remaining = b;
        const bool odd = (b & 1u) != 0;
        if (odd) {
            r = checked_add(r, a, "egyptian_mul: running sum exceeds 64 bits", row);
        }
        b >>= 1;
        if (trace) {
            trace->record({std::uint64_t{1} << (row - 1), a, odd, remaining, r});
        }
        // The last doubling is never used; skipping it keeps a*b in range
        // whenever the product is.
        if (b > 0) {
            a = checked_add(a, a, "egyptian_mul: doubling exceeds 64 bits", row);
        }
        BINEXP_INVARIANT(target == r + mul_wide(a, b), "a0*b0 = r + a*b (row end)");
    }

    if (trace) {
        trace->add_result("product", r);
    }
    return r;
}

QuotRem div_qr(std::uint64_t a, std::uint64_t d, TraceLog* trace) {
    if (d == 0) {
        throw ZeroDivisorError();
    }
    if (trace) {
        trace->reset(Algorithm::div_qr);
        trace->add_input("a", a);
        trace->add_input("d", d);
    }

    std::uint64_t r = a;
    std::uint64_t dd = d;
    std::uint64_t q = 0;
    BINEXP_INVARIANT(wide{a} == mul_wide(q, dd) + r, "a = q*dd + r (entry)");

    std::uint64_t exponent = 0;
    while (dd <= r) {
        if (dd > std::numeric_limits<std::uint64_t>::max() / 2) {
            throw OverflowError("div_qr: doubling of the divisor exceeds 64 bits",
                                static_cast<std::size_t>(exponent + 1));
        }
        dd = 2 * dd;
        ++exponent;
    }
    // dd = 2^exponent * d, least such that dd > r
    BINEXP_INVARIANT(wide{a} == mul_wide(q, dd) + r, "a = q*dd + r (after doubling)");

    while (dd != d) {
        BINEXP_INVARIANT(wide{a} == mul_wide(q, dd) + r, "a = q*dd + r (loop head)");
        dd = dd / 2;
        q = 2 * q;
        --exponent;
        BINEXP_INVARIANT(wide{a} == mul_wide(q, dd) + r, "a = q*dd + r (after halving)");
        const std::uint64_t before = r;
        const bool digit = dd <= r;
        if (digit) {
            r = r - dd;
            ++q;
        }
        BINEXP_INVARIANT(wide{a} == mul_wide(q, dd) + r, "a = q*dd + r (after subtraction)");
        if (trace) {
            trace->record({exponent, dd, digit, before, r, q});
        }
    }
    BINEXP_INVARIANT(r < d, "0 <= r < d");

    if (trace) {
        trace->add_result("quotient", q);
        trace->add_result("remainder", r);
    }
    return {q, r};
}

} // namespace binexp
