#pragma once

#include <cstdint>

namespace binexp {

struct InvariantStats {
    std::uint64_t checks = 0;
};

/// Number of invariant assertions evaluated on the calling thread since the
/// last reset. Stays at zero when the library is built without
/// BINEXP_CHECK_INVARIANTS.
InvariantStats invariant_stats() noexcept;
void reset_invariant_stats() noexcept;

/// True when the library was compiled with invariant checking.
bool invariants_enabled() noexcept;

namespace detail {
void check_invariant(bool holds, const char* what);
} // namespace detail

} // namespace binexp

#ifdef BINEXP_CHECK_INVARIANTS
#define BINEXP_INVARIANT(cond, what) ::binexp::detail::check_invariant((cond), (what))
#else
#define BINEXP_INVARIANT(cond, what) ((void)0)
#endif
