#include "binexp/invariant.hpp"

#include "binexp/errors.hpp"

#include <string>

namespace binexp {

namespace {
thread_local InvariantStats tls_stats;
}

InvariantStats invariant_stats() noexcept { return tls_stats; }

void reset_invariant_stats() noexcept { tls_stats = {}; }

bool invariants_enabled() noexcept {
#ifdef BINEXP_CHECK_INVARIANTS
    return true;
#else
    return false;
#endif
}

namespace detail {

void check_invariant(bool holds, const char* what) {
    ++tls_stats.checks;
    if (!holds) {
        throw InvariantViolation(std::string("invariant violated: ") + what);
    }
}

} // namespace detail
} // namespace binexp
