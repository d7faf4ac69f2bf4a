#include <gtest/gtest.h>

#include "scholz/arith.hpp"
#include "scholz/symbols.hpp"

#include "gen.hpp"
#include "oracles.hpp"

using namespace scholz;
using namespace scholz::symbols;
using scholz::arith::i64;
using scholz::arith::u64;

TEST(Quartic, Examples)
{
    EXPECT_EQ(quartic_symbol(1, 13), Sign::plus());
    EXPECT_EQ(quartic_symbol(5, 41), Sign::minus());
    EXPECT_EQ(quartic_symbol(41, 5), Sign::plus());
}

TEST(Quartic, Errors)
{
    auto code = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConsistencyFailure;
    };
    EXPECT_EQ(code([] { quartic_symbol(2, 7); }), ErrorCode::Precondition);
    EXPECT_EQ(code([] { quartic_symbol(5, 13); }), ErrorCode::Nonresidue);
    EXPECT_EQ(code([] { quartic_symbol(2, 21); }), ErrorCode::NotPrime);
}

TEST(Quartic, FourthPowerOracle)
{
    for (u64 q : arith::primes_up_to(400)) {
        if (q % 4 != 1)
            continue;
        for (i64 a = -60; a < 200; ++a) {
            if (a % static_cast<i64>(q) == 0 || oracle::legendre(a, q) != 1)
                continue;
            ASSERT_EQ(quartic_symbol(a, q).value(), oracle::quartic(a, q)) << a << " " << q;
        }
    }
}

TEST(Quartic, SquareGivesLegendre)
{
    gen::Rng rng(23);
    auto primes = arith::primes_up_to(100000);
    for (int i = 0; i < 10000; ++i) {
        u64 q = primes[rng.uniform(0, primes.size() - 1)];
        if (q % 4 != 1)
            continue;
        i64 a = rng.signed_uniform(-1000000, 1000000);
        if (a % static_cast<i64>(q) == 0)
            continue;
        ASSERT_EQ(quartic_symbol(a * a % static_cast<i64>(q), q).value(), arith::jacobi(a, q));
        i64 s = a * a % static_cast<i64>(q);
        Sign v = quartic_symbol(s, q);
        ASSERT_EQ(v * v, Sign::plus());
    }
}

TEST(UnitCharacter, Examples)
{
    EXPECT_EQ(unit_character(5, 41), Sign::minus());
    EXPECT_EQ(unit_character(5, 29), Sign::plus());
}

TEST(UnitCharacter, RootIndependence)
{
    gen::Rng rng(29);
    auto primes = arith::primes_up_to(20000);
    std::vector<u64> ones;
    for (u64 p : primes)
        if (p % 4 == 1)
            ones.push_back(p);
    int done = 0;
    while (done < 10000) {
        u64 p = ones[rng.uniform(0, 300)];
        u64 q = ones[rng.uniform(0, ones.size() - 1)];
        if (p == q || arith::jacobi(static_cast<i64>(p), q) != 1)
            continue;
        ASSERT_EQ(unit_character(p, q, Root::Small), unit_character(p, q, Root::Large)) << p << " " << q;
        ++done;
    }
}

TEST(UnitCharacter, RefusesBadModulus)
{
    EXPECT_THROW(unit_character(5, 11), Error);
    EXPECT_THROW(unit_character(5, 13), Error);
}

TEST(SignType, Arithmetic)
{
    EXPECT_EQ(Sign::minus() * Sign::minus(), Sign::plus());
    EXPECT_EQ(-Sign::plus(), Sign::minus());
    EXPECT_EQ(Sign::from_int(-1).value(), -1);
    EXPECT_THROW(Sign::from_int(3), Error);
}
