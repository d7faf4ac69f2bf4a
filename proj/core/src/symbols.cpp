#include "scholz/symbols.hpp"

#include <string>

#include "scholz/arith.hpp"
#include "scholz/quadratic.hpp"

namespace scholz::symbols {

using namespace arith;

Sign quartic_symbol(i64 a, u64 q)
{
    require(is_prime(q), ErrorCode::NotPrime, "quartic_symbol: modulus not prime");
    require(q % 4 == 1, ErrorCode::Precondition, "quartic_symbol undefined: q != 1 mod 4");
    require(jacobi(a, q) == 1, ErrorCode::Nonresidue, "quartic_symbol undefined: quadratic nonresidue");
    u64 v = powmod(static_cast<u64>(mod(a, static_cast<i64>(q))), (q - 1) / 4, q);
    if (v == 1)
        return Sign::plus();
    require(v == q - 1, ErrorCode::ConsistencyFailure, "quartic_symbol: power is not +-1");
    return Sign::minus();
}

Sign unit_character(u64 p, u64 q, Root root)
{
    require(is_prime(p) && is_prime(q), ErrorCode::NotPrime, "unit_character: arguments must be prime");
    require(p % 4 == 1, ErrorCode::Precondition, "unit_character: p must be 1 mod 4");
    require(p != q, ErrorCode::Precondition, "unit_character: p == q");
    require(q % 4 == 1, ErrorCode::Precondition, "unit_character: q must be 1 mod 4");
    require(jacobi(static_cast<i64>(p), q) == 1, ErrorCode::Nonresidue,
            "unit_character: sqrt(p) does not exist mod " + std::to_string(q));
    auto e = quad::fundamental_unit(quad::FundamentalDiscriminant(static_cast<i64>(p)));
    u64 r = sqrt_mod_prime(static_cast<i64>(p), q);
    if (root == Root::Large)
        r = q - r;
    mpz_class Q = static_cast<unsigned long>(q);
    mpz_class t = e.t % Q, u = e.u % Q;
    u64 tm = mpz_class((t + Q) % Q).get_ui(), um = mpz_class((u + Q) % Q).get_ui();
    u64 val = mulmod((tm + mulmod(um, r, q)) % q, invmod(2, q), q);
    require(val != 0, ErrorCode::ConsistencyFailure, "unit_character: unit vanishes mod q");
    return Sign::from_int(jacobi(static_cast<i64>(val), q));
}

} // namespace scholz::symbols
