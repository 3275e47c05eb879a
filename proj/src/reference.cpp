#include "binexp/reference.hpp"

#include "binexp/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace binexp::reference {

namespace {

// RAII holder for one mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    BigFloat(mpfr_prec_t prec, double x) : BigFloat(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const BigFloat& other) : BigFloat(mpfr_get_prec(other.v_)) {
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }

private:
    mpfr_t v_;
};

// [lo, hi] with 0 < lo <= hi; all arithmetic below is on positive values,
// so rounding lo down and hi up keeps the enclosure.
struct Enclosure {
    BigFloat lo;
    BigFloat hi;

    Enclosure(mpfr_prec_t prec, double x) : lo(prec, x), hi(prec, x) {}

    bool exact() const { return mpfr_equal_p(lo.get(), hi.get()) != 0; }
};

void widen_exponent_range() {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
}

void mul_into(Enclosure& x, const Enclosure& y) {
    mpfr_mul(x.lo.get(), x.lo.get(), y.lo.get(), MPFR_RNDD);
    mpfr_mul(x.hi.get(), x.hi.get(), y.hi.get(), MPFR_RNDU);
}

void square_into(Enclosure& x) {
    mpfr_sqr(x.lo.get(), x.lo.get(), MPFR_RNDD);
    mpfr_sqr(x.hi.get(), x.hi.get(), MPFR_RNDU);
}

Enclosure pow_uint(const Enclosure& base, std::uint64_t n, mpfr_prec_t prec) {
    Enclosure result(prec, 1.0);
    Enclosure sq = base;
    while (n != 0) {
        if (n & 1u) {
            mul_into(result, sq);
        }
        n >>= 1;
        if (n != 0) {
            square_into(sq);
        }
    }
    return result;
}

Enclosure pow_two_power(const Enclosure& base, unsigned e) {
    Enclosure result = base;
    for (unsigned i = 0; i < e; ++i) {
        square_into(result);
    }
    return result;
}

Enclosure point(const BigFloat& x) {
    Enclosure e(mpfr_get_prec(x.get()), 0.0);
    mpfr_set(e.lo.get(), x.get(), MPFR_RNDN);
    mpfr_set(e.hi.get(), x.get(), MPFR_RNDN);
    return e;
}

// Enclosure of the y with raise(y) = target, where raise is increasing and
// [lower, upper] brackets y. Bisects until the bracket is relatively
// narrower than 2^-64 or the comparison is no longer decidable.
template <typename Raise>
std::pair<BigFloat, BigFloat> bisect_root(const Enclosure& target, BigFloat lower, BigFloat upper,
                                          Raise raise, mpfr_prec_t prec) {
    BigFloat mid(prec);
    BigFloat width(prec);
    for (int iter = 0; iter < 4096; ++iter) {
        mpfr_sub(width.get(), upper.get(), lower.get(), MPFR_RNDU);
        mpfr_mul_2ui(width.get(), width.get(), 64, MPFR_RNDU);
        if (mpfr_lessequal_p(width.get(), lower.get())) {
            break;
        }
        mpfr_add(mid.get(), lower.get(), upper.get(), MPFR_RNDN);
        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
        if (mpfr_lessequal_p(mid.get(), lower.get()) || mpfr_greaterequal_p(mid.get(), upper.get())) {
            break;
        }
        const Enclosure y = raise(point(mid));
        if (mpfr_less_p(y.hi.get(), target.lo.get())) {
            mpfr_set(lower.get(), mid.get(), MPFR_RNDN);
        } else if (mpfr_greater_p(y.lo.get(), target.hi.get())) {
            mpfr_set(upper.get(), mid.get(), MPFR_RNDN);
        } else if (y.exact() && target.exact()) {
            mpfr_set(lower.get(), mid.get(), MPFR_RNDN);
            mpfr_set(upper.get(), mid.get(), MPFR_RNDN);
            break;
        } else {
            break;
        }
    }
    return {std::move(lower), std::move(upper)};
}

// Initial bracket for y = a^f, 0 < f < 1: a tight one around the libm
// estimate when it verifies, otherwise [min(1, a), max(1, a)].
template <typename Raise>
std::pair<BigFloat, BigFloat> bracket(const Enclosure& target, double a, double hint, Raise raise,
                                      mpfr_prec_t prec) {
    if (std::isfinite(hint) && hint > 0.0) {
        BigFloat lo(prec, hint);
        BigFloat hi(prec, hint);
        mpfr_mul_d(lo.get(), lo.get(), 1.0 - 0x1p-30, MPFR_RNDD);
        mpfr_mul_d(hi.get(), hi.get(), 1.0 + 0x1p-30, MPFR_RNDU);
        if (mpfr_less_p(raise(point(lo)).hi.get(), target.lo.get()) &&
            mpfr_greater_p(raise(point(hi)).lo.get(), target.hi.get())) {
            return {std::move(lo), std::move(hi)};
        }
    }
    return {BigFloat(prec, std::min(1.0, a)), BigFloat(prec, std::max(1.0, a))};
}

OracleResult to_result(const BigFloat& lo, const BigFloat& hi) {
    const mpfr_prec_t prec = mpfr_get_prec(lo.get());
    BigFloat mid(prec + 1);
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    const double value = mpfr_get_d(mid.get(), MPFR_RNDN);

    BigFloat v(prec, value);
    BigFloat up(prec);
    BigFloat down(prec);
    mpfr_sub(up.get(), hi.get(), v.get(), MPFR_RNDU);
    mpfr_sub(down.get(), v.get(), lo.get(), MPFR_RNDU);
    mpfr_max(up.get(), up.get(), down.get(), MPFR_RNDU);
    const double bound = std::max(0.0, mpfr_get_d(up.get(), MPFR_RNDU));
    return {value, bound};
}

void require_base(double a, const char* op) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError(std::string(op) + ": base must be positive and finite");
    }
}

// f = k * 2^-e with k odd, for 0 < f < 1.
std::pair<std::uint64_t, unsigned> dyadic(double f) {
    int exp2 = 0;
    const double m = std::frexp(f, &exp2); // f = m * 2^exp2, m in [0.5, 1)
    auto k = static_cast<std::uint64_t>(std::ldexp(m, 53));
    unsigned e = static_cast<unsigned>(53 - exp2);
    while ((k & 1u) == 0) {
        k >>= 1;
        --e;
    }
    return {k, e};
}

Enclosure invert(const Enclosure& x) {
    Enclosure r = x;
    mpfr_ui_div(r.lo.get(), 1, x.hi.get(), MPFR_RNDD);
    mpfr_ui_div(r.hi.get(), 1, x.lo.get(), MPFR_RNDU);
    return r;
}

struct SplitExponent {
    bool negative;
    std::uint64_t whole;
    double frac;
};

SplitExponent split(double t, const char* op) {
    if (!std::isfinite(t) || std::fabs(t) >= 0x1p63) {
        throw DomainError(std::string(op) + ": exponent must be finite with |t| < 2^63");
    }
    const double mag = std::fabs(t);
    const double whole = std::floor(mag);
    return {t < 0.0, static_cast<std::uint64_t>(whole), mag - whole};
}

OracleResult finish(Enclosure x, bool negative) {
    if (negative) {
        x = invert(x);
    }
    return to_result(x.lo, x.hi);
}

} // namespace

std::uint64_t ref_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw OverflowError("ref_mul: product exceeds 64 bits", 1);
    }
    return out;
}

QuotRem ref_divmod(std::uint64_t a, std::uint64_t d) {
    if (d == 0) {
        throw ZeroDivisorError();
    }
    return {a / d, a % d};
}

double ref_sqrt(double a) {
    if (!(a >= 0.0)) {
        throw DomainError("ref_sqrt: negative argument");
    }
    return std::sqrt(a);
}

OracleResult ref_pow(double a, double t) {
    require_base(a, "ref_pow");
    const auto [negative, whole, frac] = split(t, "ref_pow");
    widen_exponent_range();

    if (frac == 0.0 || a == 1.0) {
        constexpr mpfr_prec_t prec = 192;
        return finish(pow_uint(Enclosure(prec, a), a == 1.0 ? 0 : whole, prec), negative);
    }

    const auto [k, e] = dyadic(frac);
    const mpfr_prec_t prec = 160 + 2 * static_cast<mpfr_prec_t>(e);
    const Enclosure base(prec, a);
    const Enclosure target = pow_uint(base, k, prec);
    const auto raise = [e = e](const Enclosure& y) { return pow_two_power(y, e); };

    auto [lower, upper] = bracket(target, a, std::pow(a, frac), raise, prec);
    auto [lo, hi] = bisect_root(target, std::move(lower), std::move(upper), raise, prec);

    Enclosure result = pow_uint(base, whole, prec);
    mpfr_mul(result.lo.get(), result.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_mul(result.hi.get(), result.hi.get(), hi.get(), MPFR_RNDU);
    return finish(std::move(result), negative);
}

OracleResult ref_pow_rational(double a, std::uint64_t p, std::uint64_t q) {
    require_base(a, "ref_pow_rational");
    if (q == 0) {
        throw DomainError("ref_pow_rational: q must be positive");
    }
    widen_exponent_range();
    constexpr mpfr_prec_t prec = 256;
    const Enclosure base(prec, a);
    Enclosure result = pow_uint(base, p / q, prec);
    const std::uint64_t rem = p % q;
    if (rem == 0 || a == 1.0) {
        return to_result(result.lo, result.hi);
    }

    const Enclosure target = pow_uint(base, rem, prec);
    const auto raise = [q](const Enclosure& y) { return pow_uint(y, q, prec); };
    const double hint = std::pow(a, static_cast<double>(rem) / static_cast<double>(q));
    auto [lower, upper] = bracket(target, a, hint, raise, prec);
    auto [lo, hi] = bisect_root(target, std::move(lower), std::move(upper), raise, prec);
    mpfr_mul(result.lo.get(), result.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_mul(result.hi.get(), result.hi.get(), hi.get(), MPFR_RNDU);
    return to_result(result.lo, result.hi);
}

OracleResult ref_pow_by_roots(double a, double t) {
    require_base(a, "ref_pow_by_roots");
    const auto [negative, whole, frac] = split(t, "ref_pow_by_roots");
    widen_exponent_range();
    constexpr mpfr_prec_t prec = 192;

    Enclosure result = pow_uint(Enclosure(prec, a), whole, prec);
    if (frac != 0.0) {
        const auto [k, e] = dyadic(frac);
        // bit i of k (from the top) is the digit of 2^-(e - i)
        Enclosure root(prec, a);
        for (unsigned i = 1; i <= e; ++i) {
            mpfr_sqrt(root.lo.get(), root.lo.get(), MPFR_RNDD);
            mpfr_sqrt(root.hi.get(), root.hi.get(), MPFR_RNDU);
            if ((k >> (e - i)) & 1u) {
                mul_into(result, root);
            }
        }
    }
    return finish(std::move(result), negative);
}

OracleResult ref_log(double b, double a) {
    if (!(b > 1.0) || !std::isfinite(b)) {
        throw DomainError("ref_log: base must be finite and greater than 1");
    }
    if (!(a >= 1.0 && a < b)) {
        throw DomainError("ref_log: requires 1 <= a < b");
    }
    if (a == 1.0) {
        return {0.0, 0.0};
    }
    widen_exponent_range();
    constexpr mpfr_prec_t prec = 192;
    constexpr unsigned kDepth = 50;
    const Enclosure base(prec, b);
    const Enclosure arg(prec, a);

    // log_b(a) in [lo_k / 2^e, (lo_k + 1) / 2^e]
    std::uint64_t lo_k = 0;
    unsigned e = 0;
    while (e < kDepth) {
        const std::uint64_t m = 2 * lo_k + 1;
        const Enclosure lhs = pow_uint(base, m, prec);        // b^m
        const Enclosure rhs = pow_two_power(arg, e + 1);      // a^(2^(e+1))
        if (mpfr_less_p(lhs.hi.get(), rhs.lo.get())) {
            lo_k = m;
        } else if (mpfr_greater_p(lhs.lo.get(), rhs.hi.get())) {
            lo_k = 2 * lo_k;
        } else if (lhs.exact() && rhs.exact()) {
            return {std::ldexp(static_cast<double>(m), -static_cast<int>(e + 1)), 0.0};
        } else {
            break;
        }
        ++e;
    }
    const double value = std::ldexp(static_cast<double>(2 * lo_k + 1), -static_cast<int>(e + 1));
    return {value, std::ldexp(1.0, -static_cast<int>(e + 1))};
}

} // namespace binexp::reference
