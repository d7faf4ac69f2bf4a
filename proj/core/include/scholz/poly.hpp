#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace scholz::poly {

/// Integer polynomial, coefficient of x^i at index i.
using ZPoly = std::vector<mpz_class>;

mpz_class evaluate(const ZPoly& f, const mpz_class& x);
ZPoly derivative(const ZPoly& f);
/// Resultant by Bareiss elimination on the Sylvester matrix (exact).
mpz_class resultant(const ZPoly& f, const ZPoly& g);
/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
mpz_class discriminant(const ZPoly& f);
/// Rational roots of a monic integer cubic or any monic polynomial (divisors of the constant term).
bool has_rational_root(const ZPoly& monic);
/// Monic integer cubic without rational roots.
bool cubic_irreducible(const ZPoly& monic_cubic);

/// v_p([O_K : Z[alpha]]) for an irreducible monic cubic with root alpha,
/// by enlarging Z[alpha] inside (1/p) of itself until p-maximal.
unsigned cubic_index_valuation(const ZPoly& monic_cubic, std::uint64_t p);
/// [O_K : Z[alpha]] over the primes whose square divides disc(f).
mpz_class cubic_index(const ZPoly& monic_cubic);

/// Distinct roots in [0, p) of f mod p, ascending.
std::vector<std::uint64_t> roots_mod_p(const ZPoly& f, std::uint64_t p);

} // namespace scholz::poly
