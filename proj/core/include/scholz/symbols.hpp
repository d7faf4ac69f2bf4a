#pragma once

#include <cstdint>

#include "scholz/sign.hpp"

namespace scholz::symbols {

/// (a/q)_4 = a^((q-1)/4) mod q.  Errors: Precondition when q is not 1 mod 4,
/// Nonresidue when (a/q) != +1, NotPrime.
Sign quartic_symbol(std::int64_t a, std::uint64_t q);

/// Quadratic character of eps_p modulo a prime above q (q = 1 mod 4, (p/q) = +1).
/// root selects which square root of p mod q is used; the value does not depend on it.
enum class Root { Small, Large };
Sign unit_character(std::uint64_t p, std::uint64_t q, Root root = Root::Small);

} // namespace scholz::symbols
