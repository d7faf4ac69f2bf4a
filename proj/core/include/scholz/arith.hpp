#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "scholz/error.hpp"

namespace scholz::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct PrimePower {
    mpz_class prime;
    unsigned exponent = 0;
};

/// value = sign(value) * prod prime^exponent, primes strictly increasing.
struct Factorization {
    mpz_class value;
    std::vector<PrimePower> factors;

    mpz_class product() const; ///< product of the prime powers, i.e. |value|
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 b, u64 e, u64 m);
i64 mod(i64 a, i64 m); ///< least nonnegative residue, m > 0
u64 invmod(u64 a, u64 m); ///< throws Precondition when gcd(a,m) != 1
u64 isqrt(u64 n);
bool is_square(i64 n);
bool is_square(const mpz_class& n);

/// Deterministic below 2^64 (bases 2..37).
bool is_prime(u64 n);
/// Below 2^64 as above.  Larger n: strong probable prime to the first
/// 24 prime bases; a composite passing all of them has not been found and the
/// Rabin bound puts the error below 4^-24 for any fixed composite.
bool is_prime(const mpz_class& n);

/// Trial division to 10^6, then Brent's rho.  Each rho attempt is capped;
/// running out of attempts throws FactorBudgetExceeded.
Factorization factor(const mpz_class& n, u64 rho_iterations = 2'000'000);
Factorization factor(i64 n);

int jacobi(i64 a, u64 n);
int jacobi(const mpz_class& a, const mpz_class& n);

/// r with r^2 = a (mod p).  Errors: NotPrime, Nonresidue.
u64 sqrt_mod_prime(i64 a, u64 p);

std::vector<u64> primes_up_to(u64 n);
u64 next_prime(u64 n); ///< smallest prime > n

bool is_squarefree(i64 n);
/// Squarefree kernel keeping the sign: n = kernel * s^2.
i64 squarefree_kernel(i64 n);

/// Multiplicative order of a mod p, p prime, a coprime to p.
u64 order_mod_prime(u64 a, u64 p);

} // namespace scholz::arith
