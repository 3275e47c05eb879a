#pragma once

#include <cstdint>
#include <vector>

namespace binexp {

class TraceLog;

/// Exponents i with d_i = 1 in n = sum d_i 2^i, ascending.
struct BinaryExpansion {
    std::vector<unsigned> bit_positions;

    bool operator==(const BinaryExpansion&) const = default;
};

struct QuotRem {
    std::uint64_t quotient = 0;
    std::uint64_t remainder = 0;

    bool operator==(const QuotRem&) const = default;
};

BinaryExpansion binary_digits(std::uint64_t n);

/// Sum of 2^i over the positions. Throws DomainError when the positions are
/// not strictly ascending or reach past bit 63.
std::uint64_t reconstruct(const BinaryExpansion& expansion);

/// a*b by doubling a once per binary digit of b and adding the doublings
/// whose digit is 1. Checked in 64 bits: throws OverflowError naming the
/// row where a doubling or the running sum would wrap.
///
/// Trace: one event per digit of b (bit-length of b rows).
std::uint64_t egyptian_mul(std::uint64_t a, std::uint64_t b, TraceLog* trace = nullptr);

/// Quotient and remainder of a / d: double d until it exceeds a, then halve
/// back down, subtracting whenever the halved multiple fits.
///
/// Throws ZeroDivisorError for d == 0 and OverflowError when the doubling
/// phase would pass 2^64 (a close to the top of the range).
/// Trace: one event per halving step.
QuotRem div_qr(std::uint64_t a, std::uint64_t d, TraceLog* trace = nullptr);

} // namespace binexp
