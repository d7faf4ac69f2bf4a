#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "scholz/arith.hpp"
#include "scholz/poly.hpp"

namespace scholz::cubic {

using arith::i64;
using arith::u64;

/// Element of the cyclic cubic field of conductor q, in coordinates on the
/// Gaussian periods eta_0, eta_1, eta_2 (a normal integral basis).
using Elem = std::array<mpz_class, 3>;

/// Cyclic cubic subfield of Q(zeta_q).
struct PeriodField {
    u64 q = 0;
    i64 L = 0, M = 0;            ///< 4q = L^2 + 27 M^2, L = 1 mod 3, M > 0
    poly::ZPoly poly;            ///< minimal polynomial of eta_0
    mpz_class disc;              ///< disc(poly)
    i64 index = 0;               ///< [O : Z[eta_0]]
    bool disc_check = false;     ///< disc == q^2 * index^2
    u64 generator = 0;           ///< primitive root mod q defining eta_i
    /// eta_i eta_j = sum_k table[i][j][k] eta_k
    std::array<std::array<std::array<i64, 3>, 3>, 3> table{};
    std::array<long double, 3> periods{};
};

/// Errors: Precondition when q is not a prime = 1 mod 3.
PeriodField period_field(u64 q);

Elem one();
Elem from_int(i64 c);
/// a + b theta + c theta^2 with theta = eta_0.
Elem from_theta(const PeriodField& K, i64 a, i64 b, i64 c);
Elem mul(const PeriodField& K, const Elem& x, const Elem& y);
Elem pow(const PeriodField& K, Elem x, i64 e); ///< e >= 0
/// Galois generator: eta_i -> eta_{i+1}.
Elem sigma(const Elem& x);
mpz_class norm(const PeriodField& K, const Elem& x);
/// Inverse of a unit (norm +-1).
Elem unit_inverse(const PeriodField& K, const Elem& u);
bool is_torsion(const Elem& x); ///< +-1
std::string to_string(const Elem& x);

/// The three conjugates as long doubles.
std::array<long double, 3> embeddings(const PeriodField& K, const Elem& x);

/// Real k-th root (k odd) of x inside the field, if there is one.
std::optional<Elem> kth_root(const PeriodField& K, const Elem& x, unsigned k);

struct CubicUnitSystem {
    u64 q = 0;
    std::array<Elem, 2> units;
    std::array<int, 2> norms{};
    long double log_det = 0;      ///< |det| of the 2x2 log-embedding matrix
    long double log_det_error = 0;
    bool independent = false;
    bool saturated_at_3 = false;
    std::size_t box_units_found = 0; ///< units found in the coefficient box (up to sign)
    i64 height_bound = 0;
    /// sigma on the unit basis: sigma(u_j) = +- u_0^{s[0][j]} u_1^{s[1][j]}
    std::array<std::array<i64, 2>, 2> sigma_matrix{};
    std::size_t generator_index = 0; ///< basis unit generating E/E^3 as a Galois module
};

/// Box search on eta-coordinates (|x_i| <= height_bound), seeded with the
/// cyclotomic units so a full-rank system always exists; then 3-saturation.
/// Errors: Precondition for height_bound < 1, InsufficientUnits.
CubicUnitSystem unit_search(const PeriodField& K, i64 height_bound);

/// Replace the basis by a k-saturated one when a k-th root exists (k odd prime).
/// Returns true when the returned basis is certified k-saturated.
bool saturate(const PeriodField& K, CubicUnitSystem& sys, unsigned k);

/// Galois-module generator of E/E^3 (the unit used as eps in the reciprocity law).
const Elem& generator_unit(const CubicUnitSystem& sys);

/// Three ring homomorphisms O -> F_p (degree-one primes above p).
/// hom k sends eta_i to r[(i + k) mod 3]; hom_{k} o sigma = hom_{k+1}.
struct SplitPrime {
    u64 p = 0;
    std::array<u64, 3> r{};
};

bool splits_completely(const PeriodField& K, u64 p);
/// Errors: NotSplit, Precondition (p == q).
SplitPrime split_prime(const PeriodField& K, u64 p);
u64 reduce(const PeriodField& K, const Elem& x, const SplitPrime& P, unsigned k);

/// Exponents e_k with chi_k(alpha) = w^{e_k}, w the smallest primitive cube root mod p.
/// Errors: Precondition (p != 1 mod 3), NotSplit, Degenerate (alpha vanishes at a prime).
std::array<unsigned, 3> cubic_characters(const PeriodField& K, const Elem& alpha, u64 p);

/// Level from a character pattern: 4 all trivial, 3 all equal, 2 pairwise distinct, 1 otherwise.
unsigned level_from_characters(const std::array<unsigned, 3>& e);

struct SymbolicClass {
    unsigned level = 0;
    bool squared = false; ///< a norm -1 unit was replaced by its square
    std::array<unsigned, 3> characters{};
};

/// Errors: Precondition (not a unit), ConsistencyFailure (mixed pattern), inherited ones.
SymbolicClass symbolic_class(const PeriodField& K, const Elem& eps, u64 p);

struct L3Report {
    u64 p = 0, q = 0;
    SymbolicClass class_pq; ///< eps_p at q
    SymbolicClass class_qp; ///< eps_q at p
    bool biconditional_holds = false;
};

/// Errors: Precondition, NotSplit (mutual splitting fails), NotSaturated.
L3Report l3_reciprocity_check(const PeriodField& Kp, const CubicUnitSystem& Up, const PeriodField& Kq,
                              const CubicUnitSystem& Uq);
L3Report l3_reciprocity_check(u64 p, u64 q, i64 height_bound = 50);

/// p is a cube mod q (p != q), i.e. p splits completely in the cubic field of conductor q.
bool is_cubic_residue(u64 p, u64 q);

} // namespace scholz::cubic
