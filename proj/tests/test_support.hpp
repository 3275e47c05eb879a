#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace binexp::testing {

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(BINEXP_FIXTURE_DIR) + "/" + name, std::ios::binary);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Uniform in [lo, hi] on a log scale.
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// Random value with a random bit-length in [0, max_bits].
inline std::uint64_t random_bits(std::mt19937_64& rng, unsigned max_bits) {
    const unsigned bits = std::uniform_int_distribution<unsigned>(0, max_bits)(rng);
    if (bits == 0) {
        return 0;
    }
    const std::uint64_t top = std::uint64_t{1} << (bits - 1);
    const std::uint64_t mask = top - 1;
    return top | (rng() & mask);
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

} // namespace binexp::testing
