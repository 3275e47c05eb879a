#include "binexp/errors.hpp"
#include "binexp/realops.hpp"
#include "binexp/reference.hpp"
#include "binexp/trace.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace binexp;
using binexp::testing::log_uniform;
using binexp::testing::rel_err;

namespace {

double ulp(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()) - x; }

// Decimal digits of agreement between x and the correctly rounded root.
double digits_correct(double x, double root) {
    return -std::log10(std::fabs(x - root) / root);
}

} // namespace

TEST_CASE("heron_sqrt examples") {
    CHECK(heron_sqrt(1.0) == 1.0);
    CHECK(heron_sqrt(4.0) == 2.0);
    CHECK(heron_sqrt(0.0) == 0.0);

    const double r = heron_sqrt(2.0);
    const long double sq = static_cast<long double>(r) * r;
    CHECK(sq >= 2.0L * (1 - 1e-15L));
    CHECK(sq <= 2.0L * (1 + 1e-15L));
    CHECK(std::fabs(r - 1.4142135623730951) <= ulp(1.4142135623730951));
}

TEST_CASE("heron_sqrt domain and convergence errors") {
    CHECK_THROWS_AS(heron_sqrt(-1.0), DomainError);
    CHECK_THROWS_AS(heron_sqrt(std::nan("")), DomainError);
    CHECK_THROWS_AS(heron_sqrt(std::numeric_limits<double>::infinity()), DomainError);

    ToleranceConfig tight;
    tight.max_iterations = 3;
    CHECK_THROWS_AS(heron_sqrt(1e10, tight), NonConvergenceError);

    // Once the spacing of doubles near sqrt(a) exceeds 1e-16 the absolute
    // test only fires on an exact fixed point.
    ToleranceConfig absolute;
    absolute.heron_relative_mode = false;
    CHECK(heron_sqrt(1e6, absolute) == 1000.0);
    CHECK(heron_sqrt(1e300, absolute) == heron_sqrt(1e300));
    CHECK(std::fabs(heron_sqrt(0.01, absolute) - 0.1) <= 1e-16);

    ToleranceConfig bad;
    bad.heron_eps = 0.0;
    CHECK_THROWS_AS(heron_sqrt(2.0, bad), DomainError);
    bad = {};
    bad.max_iterations = 0;
    CHECK_THROWS_AS(heron_sqrt(2.0, bad), DomainError);
}

TEST_CASE("heron_sqrt stays within 4 ulp over the binary64 range") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 3000; ++i) {
        const double a = log_uniform(rng, 1e-300, 1e300);
        const double want = reference::ref_sqrt(a);
        REQUIRE(std::fabs(heron_sqrt(a) - want) <= 4 * ulp(want));
    }
    const double tiny = std::numeric_limits<double>::denorm_min();
    CHECK(heron_sqrt(tiny) > 0.0);
    CHECK(std::fabs(heron_sqrt(std::numeric_limits<double>::max()) -
                    std::sqrt(std::numeric_limits<double>::max())) <= 4 * ulp(1.3e154));
}

TEST_CASE("heron iterates never fall below the root") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 500; ++i) {
        const double a = log_uniform(rng, 1e-8, 1e8);
        TraceLog log;
        heron(a, {}, &log);
        for (const auto& e : log.events()) {
            const long double x = log.field<double>(e, "x");
            REQUIRE(x * x >= a * (1 - 1e-12L));
        }
    }
}

TEST_CASE("heron correct digits double each iteration") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 200; ++i) {
        const double a = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        const double root = std::sqrt(a);
        TraceLog log;
        heron(a, {}, &log);
        double prev = digits_correct(1.0, root);
        for (const auto& e : log.events()) {
            const double x = log.field<double>(e, "x");
            if (std::fabs(x - root) <= 2 * ulp(root)) {
                break;
            }
            const double now = digits_correct(x, root);
            REQUIRE(now >= 2 * prev - 1);
            prev = now;
        }
    }
}

TEST_CASE("heron trace event count equals iteration count") {
    TraceLog log;
    const HeronResult r = heron(2.0, {}, &log);
    CHECK(log.events().size() == r.iterations);
    CHECK(log.result_value<std::uint64_t>("iterations") == r.iterations);
    CHECK(log.result_value<double>("value") == r.root);

    heron(1.0, {}, &log);
    CHECK(log.events().size() == 1);
    heron(0.0, {}, &log);
    CHECK(log.events().empty());
}

TEST_CASE("pow_rational examples") {
    CHECK(pow_rational(3.7, {1, 1}) == 3.7);
    CHECK(pow_rational(4.0, {1, 2}) == 2.0);
    CHECK(pow_rational(123.0, {0, 7}) == 1.0);
    CHECK(pow_rational(0.25, {0, 1}) == 1.0);

    const double r = pow_rational(2.0, {3, 2});
    const double eight = 2.0 * 2.0 * 2.0;
    CHECK(std::fabs(r * r - eight) <= 1e-8);

    CHECK(rel_err(pow_rational(2.0, {10, 1}), 1024.0) <= 1e-15);
    CHECK(rel_err(pow_rational(10.0, {6, 3}), 100.0) <= 1e-15);
}

TEST_CASE("pow_rational errors") {
    CHECK_THROWS_AS(pow_rational(0.0, {1, 2}), DomainError);
    CHECK_THROWS_AS(pow_rational(-2.0, {1, 2}), DomainError);
    CHECK_THROWS_AS(pow_rational(2.0, {1, 0}), DomainError);
    CHECK_THROWS_AS(pow_rational(std::numeric_limits<double>::infinity(), {1, 2}), DomainError);
    CHECK_THROWS_AS(pow_rational(1.0, {std::numeric_limits<std::uint64_t>::max(), 1}),
                    OverflowError);
    CHECK_THROWS_AS(pow_rational(1e200, {4, 1}), OverflowError);
    CHECK_THROWS_AS(pow_rational(1e-200, {4, 1}), OverflowError);

    ToleranceConfig tight;
    tight.max_iterations = 5;
    CHECK_THROWS_AS(pow_rational(3.0, {1, 3}, tight), NonConvergenceError);
}

TEST_CASE("pow_real examples") {
    CHECK(pow_real(3.7, 1.0) == 3.7);
    CHECK(pow_real(3.7, 0.0) == 1.0);
    const double r = pow_real(9.0, 0.5);
    CHECK(rel_err(r * r, 9.0) <= 1e-9);
    CHECK(rel_err(pow_real(2.0, 10.0), 1024.0) <= 1e-15);
}

TEST_CASE("pow_real errors") {
    CHECK_THROWS_AS(pow_real(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(pow_real(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(pow_real(2.0, -1.0), DomainError);
    CHECK_THROWS_AS(pow_real(2.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(pow_real(1e200, 4.0), OverflowError);
    ToleranceConfig tight;
    tight.max_iterations = 5;
    CHECK_THROWS_AS(pow_real(3.0, 0.3, tight), NonConvergenceError);
}

TEST_CASE("pow invariant a0^t0 = z*a^t holds on traced steps") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 300; ++i) {
        const double a0 = log_uniform(rng, 1e-3, 1e3);
        const double t0 = std::uniform_real_distribution<double>(0.0, 32.0)(rng);
        TraceLog log;
        pow_real(a0, t0, {}, &log);
        const long double target = t0 * std::log(static_cast<long double>(a0));
        for (const auto& e : log.events()) {
            const long double z = log.field<double>(e, "z");
            const long double a = log.field<double>(e, "base");
            const long double t = log.field<double>(e, "exponent");
            REQUIRE(std::fabs(std::log(z) + t * std::log(a) - target) <= 1e-9L);
        }

        const std::uint64_t p = rng() % 65;
        const std::uint64_t q = 1 + rng() % 64;
        pow_rational(a0, {p, q}, {}, &log);
        const long double rtarget = static_cast<long double>(p) / q * std::log(static_cast<long double>(a0));
        for (const auto& e : log.events()) {
            const long double z = log.field<double>(e, "z");
            const long double a = log.field<double>(e, "base");
            const long double ratio = static_cast<long double>(log.field<std::uint64_t>(e, "p")) /
                                      log.field<std::uint64_t>(e, "q");
            const auto action = static_cast<PowAction>(log.field<std::uint64_t>(e, "action"));
            const long double lhs = action == PowAction::done_exact ? std::log(z)
                                                                    : std::log(z) + ratio * std::log(a);
            REQUIRE(std::fabs(lhs - rtarget) <= 1e-9L);
        }
    }
}

TEST_CASE("pow_rational agrees with pow_real") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 500; ++i) {
        const double a = log_uniform(rng, 1e-3, 1e3);
        const std::uint64_t p = rng() % 65;
        const std::uint64_t q = 1 + rng() % 64;
        const double r1 = pow_rational(a, {p, q});
        const double r2 = pow_real(a, static_cast<double>(p) / static_cast<double>(q));
        REQUIRE(rel_err(r2, r1) <= 1e-9);
    }
}

TEST_CASE("log_base examples") {
    const BinaryFraction zero = log_base(7.0, 1.0);
    CHECK(zero.value == 0.0);
    for (auto d : zero.digits) {
        CHECK(d == 0);
    }

    const BinaryFraction half = log_base(4.0, 2.0);
    CHECK(half.value == 0.5);
    REQUIRE(!half.digits.empty());
    CHECK(half.digits[0] == 1);
    for (std::size_t i = 1; i < half.digits.size(); ++i) {
        CHECK(half.digits[i] == 0);
    }

    // log10(2) = 0.30102999566398119521...
    CHECK(std::fabs(log_base(10.0, 2.0).value - 0.30102999566398119521) <= 1e-10);
}

TEST_CASE("log_base domain") {
    CHECK_THROWS_AS(log_base(10.0, 0.5), DomainError);
    CHECK_THROWS_AS(log_base(10.0, 10.0), DomainError);
    CHECK_THROWS_AS(log_base(10.0, 11.0), DomainError);
    CHECK_THROWS_AS(log_base(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(log_base(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(log_base(std::numeric_limits<double>::infinity(), 2.0), DomainError);
}

TEST_CASE("log_base digits, z and frac are consistent on every step") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 300; ++i) {
        const double b = std::uniform_real_distribution<double>(1.0, 100.0)(rng);
        if (!(b > 1.0)) {
            continue;
        }
        const double a = std::uniform_real_distribution<double>(1.0, b)(rng);
        TraceLog log;
        const BinaryFraction x = log_base(b, a, {}, &log);
        REQUIRE(x.digits.size() <= 53);
        REQUIRE(log.events().size() == x.digits.size());

        double z = 1.0;
        long double digit_sum = 0.0L;
        for (const auto& e : log.events()) {
            const auto k = log.field<std::uint64_t>(e, "k");
            const double root = log.field<double>(e, "root");
            REQUIRE(log.field<double>(e, "frac") == std::ldexp(1.0, -static_cast<int>(k)));
            REQUIRE(root > 1.0);
            const bool digit = log.field<bool>(e, "digit");
            REQUIRE(digit == (z * root <= a));
            REQUIRE(digit == (x.digits[k - 1] == 1));
            if (digit) {
                z *= root;
                digit_sum += std::ldexp(1.0L, -static_cast<int>(k));
            }
            REQUIRE(log.field<double>(e, "z") == z);
        }
        CHECK(x.value == digit_sum);
        CHECK(x.value >= 0.0);
        CHECK(x.value < 1.0);
    }
}

TEST_CASE("log_base is deterministic") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 50; ++i) {
        const double b = std::uniform_real_distribution<double>(1.5, 100.0)(rng);
        const double a = std::uniform_real_distribution<double>(1.0, b)(rng);
        CHECK(log_base(b, a) == log_base(b, a));
    }
}

TEST_CASE("evaluation undoes solving: pow_real(b, log_b a) = a") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 300; ++i) {
        const double b = std::uniform_real_distribution<double>(1.0, 100.0)(rng);
        if (!(b > 1.0)) {
            continue;
        }
        const double a = std::uniform_real_distribution<double>(1.0, b)(rng);
        const double x = log_base(b, a).value;
        REQUIRE(rel_err(pow_real(b, x), a) <= 1e-8);
    }
}

TEST_CASE("briggs_chain") {
    const BriggsChain ten = briggs_chain(10.0);
    CHECK(ten.count() == 53);
    CHECK(ten.base == 10.0);

    const BriggsChain four = briggs_chain(4.0);
    REQUIRE(four.count() >= 1);
    CHECK(four.values.front() == 2.0);

    // sqrt(1 + 2^-52) rounds to 1: the chain is empty.
    const BriggsChain tiny = briggs_chain(1.0 + 0x1p-52);
    CHECK(tiny.count() == 0);

    CHECK_THROWS_AS(briggs_chain(1.0), DomainError);
    CHECK_THROWS_AS(briggs_chain(0.5), DomainError);
    CHECK_THROWS_AS(briggs_chain(std::nan("")), DomainError);

    const BriggsChain heron_ten = briggs_chain(10.0, SqrtMode::heron);
    CHECK(heron_ten.count() >= 52);
    CHECK(heron_ten.count() <= 54);
}

TEST_CASE("briggs_chain values decrease toward 1 and square back") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 200; ++i) {
        const double b = log_uniform(rng, 1.0 + 1e-9, 1e300);
        for (auto mode : {SqrtMode::correctly_rounded, SqrtMode::heron}) {
            const BriggsChain c = briggs_chain(b, mode);
            double prev = b;
            for (double v : c.values) {
                REQUIRE(v > 1.0);
                REQUIRE(v < prev);
                REQUIRE(rel_err(v * v, prev) <= 4 * std::numeric_limits<double>::epsilon());
                prev = v;
            }
        }
    }
}

TEST_CASE("tracing does not change real results") {
    std::mt19937_64 rng(79);
    TraceLog log;
    for (int i = 0; i < 100; ++i) {
        const double a = log_uniform(rng, 1e-3, 1e3);
        const double t = std::uniform_real_distribution<double>(0.0, 8.0)(rng);
        CHECK(heron_sqrt(a, {}, &log) == heron_sqrt(a));
        CHECK(pow_real(a, t, {}, &log) == pow_real(a, t));
        CHECK(pow_rational(a, {7, 3}, {}, &log) == pow_rational(a, {7, 3}));
        const double b = 1.0 + a;
        CHECK(log_base(b, 1.0 + a / 2, {}, &log) == log_base(b, 1.0 + a / 2));
        CHECK(briggs_chain(b, SqrtMode::heron, {}, &log).values ==
              briggs_chain(b, SqrtMode::heron).values);
        CHECK(log.result_value<std::uint64_t>("count") == log.events().size());
    }
}
