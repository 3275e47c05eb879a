#pragma once

#include "binexp/intops.hpp"

#include <cstdint>

namespace binexp::reference {

/// Independent oracles for tests and acceptance runs. Nothing here calls
/// intops or realops.

/// The true value lies in [value - error_bound, value + error_bound].
struct OracleResult {
    double value = 0.0;
    double error_bound = 0.0;

    bool contains(double x) const noexcept {
        return value - error_bound <= x && x <= value + error_bound;
    }
};

/// Built-in multiplication; throws OverflowError past 64 bits.
std::uint64_t ref_mul(std::uint64_t a, std::uint64_t b);
/// Built-in / and %; throws ZeroDivisorError for d == 0.
QuotRem ref_divmod(std::uint64_t a, std::uint64_t d);

/// Correctly rounded square root (the platform's sqrt).
double ref_sqrt(double a);

/// Encloses a^t for a > 0 and finite t with |t| < 2^63. The integer part of
/// t is applied by binary powering, the dyadic fractional part k/2^e by
/// bisecting for y with y^(2^e) = a^k in directed-rounding interval
/// arithmetic. error_bound <= 1e-12 * value.
OracleResult ref_pow(double a, double t);

/// Encloses a^(p/q) by bisecting for y with y^q = a^(p mod q), times
/// a^(p div q).
OracleResult ref_pow_rational(double a, std::uint64_t p, std::uint64_t q);

/// Second route to a^t: binary powering for the integer part and a chain of
/// interval square roots a^(2^-i) for each 1-bit of the fraction.
OracleResult ref_pow_by_roots(double a, double t);

/// Encloses log_b(a) for b > 1, 1 <= a < b by bisection on x in [0, 1]:
/// x > k/2^e exactly when b^k < a^(2^e). error_bound <= 1e-12.
OracleResult ref_log(double b, double a);

} // namespace binexp::reference
