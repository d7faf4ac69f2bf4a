#pragma once

#include <cstdint>
#include <vector>

namespace scholz::addchain {

using u64 = std::uint64_t;

struct AdditionChain {
    std::vector<u64> terms; ///< 1 = terms[0] < terms[1] < ...
    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

/// Chain invariant: starts at 1, strictly increasing, every later term a sum of two earlier ones.
bool verify(const std::vector<u64>& terms);
/// verify() and terms.back() == n.
bool verify(const std::vector<u64>& terms, u64 n);

/// floor(log2 n) + popcount(n) - 1
unsigned binary_length(u64 n);
/// max(ceil(log2 n), ceil(log2 n + log2 popcount(n) - 2.13))
unsigned lower_bound(u64 n);

struct OptimalChain {
    AdditionChain chain;
    unsigned length = 0;
};

inline constexpr u64 default_bound = u64{1} << 20;

/// Iterative deepening from lower_bound(n).  Errors: BoundExceeded (n > bound or n == 0).
OptimalChain optimal_chain(u64 n, u64 bound = default_bound);
/// l(n), memoised across calls (thread safe).
unsigned chain_length(u64 n, u64 bound = default_bound);

struct ScholzBrauer {
    unsigned n = 0;
    unsigned l_n = 0;
    unsigned l_mersenne = 0; ///< l(2^n - 1)
    unsigned bound = 0;      ///< n - 1 + l(n)
    bool holds = false;
};

/// Errors: BoundExceeded (n > 10 or n == 0).
ScholzBrauer scholz_brauer_check(unsigned n);

} // namespace scholz::addchain
