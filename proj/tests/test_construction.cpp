#include <gtest/gtest.h>

#include "scholz/construction.hpp"
#include "scholz/ell2.hpp"
#include "scholz/quadratic.hpp"
#include "scholz/symbols.hpp"

#include "oracles.hpp"

using namespace scholz;
using namespace scholz::construct;

namespace {

ErrorCode code_of(auto f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConsistencyFailure;
}

std::string base(const ConstructionCertificate& c, const std::string& key)
{
    for (auto& [k, v] : c.base_data)
        if (k == key)
            return v;
    return {};
}

} // namespace

TEST(D4, Examples)
{
    auto c = d4_plan(5);
    EXPECT_EQ(base(c, "q"), "29");
    EXPECT_TRUE(c.complete);
    ASSERT_GE(c.conditions.size(), 3u);
    EXPECT_EQ(c.conditions[0].name, "q_congruent_1_mod_4");
    EXPECT_EQ(c.conditions[1].name, "legendre_p_q");
    EXPECT_EQ(c.conditions[2].name, "unit_character");
    for (auto& k : c.conditions)
        EXPECT_TRUE(k.holds) << k.name;

    // 29 is the smallest: no smaller q = 1 mod 4 passes both symbol checks
    for (u64 q = 5; q < 29; q += 4) {
        if (!oracle::is_prime(q))
            continue;
        bool ok = oracle::legendre(5, q) == 1 && symbols::unit_character(5, q).is_plus();
        EXPECT_FALSE(ok) << q;
    }

    EXPECT_TRUE(d4_plan(13).complete);
    EXPECT_EQ(code_of([] { d4_plan(7); }), ErrorCode::Precondition);
}

TEST(D4, RayClassConsistency)
{
    for (u64 p : arith::primes_up_to(300)) {
        if (p % 4 != 1)
            continue;
        auto c = d4_plan(p);
        ASSERT_TRUE(c.complete) << p;
        u64 q = std::stoull(base(c, "q"));
        auto r = ell2::ray_class_number(quad::fundamental_discriminant(static_cast<i64>(p)), q,
                                        ell2::WhichIdeal::First, true);
        EXPECT_EQ(r.value % 4, 0u) << p << " " << q;
    }
}

TEST(D4, Reproducible)
{
    EXPECT_EQ(to_json(d4_plan(5)), to_json(d4_plan(5)));
    EXPECT_EQ(to_json(d4_plan(37)), to_json(d4_plan(37)));
}

TEST(Pq, Examples)
{
    auto a = pq_plan(2, 5);
    EXPECT_TRUE(a.complete);
    EXPECT_EQ(base(a, "ell"), "13");
    EXPECT_EQ(base(a, "r"), "1361");

    auto b = pq_plan(3, 7);
    EXPECT_TRUE(b.complete);
    EXPECT_EQ(base(b, "ell"), "13");
    EXPECT_EQ(base(b, "r"), "4733");

    EXPECT_EQ(code_of([] { pq_plan(5, 11); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { pq_plan(3, 5); }), ErrorCode::Precondition);
}

TEST(Pq, RIsQthPowerResidueForUnits)
{
    // r = 1361: -1 and eps_13 = (3 + sqrt 13)/2 are fifth powers mod r
    u64 r = 1361;
    i64 s = static_cast<i64>(arith::sqrt_mod_prime(13, r));
    for (i64 root : {s, static_cast<i64>(r) - s}) {
        u64 eps = arith::mulmod(static_cast<u64>(3 + root) % r, arith::invmod(2, r), r);
        EXPECT_EQ(arith::powmod(eps, (r - 1) / 5, r), 1u);
    }
    EXPECT_EQ(arith::powmod(r - 1, (r - 1) / 5, r), 1u);
}

TEST(CubicFromUnit, Example182)
{
    auto c = cubic_from_unit(182);
    EXPECT_EQ(c.poly, (poly::ZPoly{-1402, -3, 0, 1}));
    EXPECT_EQ(c.disc, -53071200);
    EXPECT_EQ(c.disc, oracle::cubic_disc(0, -3, -1402));
    EXPECT_EQ(c.fd_minus_m, -728);
    EXPECT_EQ(c.cofactor, 270);
    EXPECT_TRUE(c.unramified_claim);
    ASSERT_TRUE(c.companion_a);
    EXPECT_EQ(*c.companion_a, 17);
    EXPECT_EQ(*c.companion_disc, 4);
    EXPECT_EQ(-4 * 17 * 17 * 17 + 27 * 728, 4);
    EXPECT_TRUE(c.certificate.complete);
}

TEST(CubicFromUnit, SmallM)
{
    auto c = cubic_from_unit(1);
    EXPECT_TRUE(c.irreducible);
    EXPECT_EQ(c.disc, -324);
    EXPECT_TRUE(c.square_cofactor);
    EXPECT_FALSE(c.unramified_claim);
    EXPECT_EQ(code_of([] { cubic_from_unit(4); }), ErrorCode::Precondition);
    EXPECT_EQ(code_of([] { cubic_from_unit(6); }), ErrorCode::Precondition);
}

TEST(CubicFromUnit, ClaimImpliesThreeDividesH)
{
    int claims = 0;
    for (i64 m = 1; m <= 500; ++m) {
        if (m % 3 == 0 || !arith::is_squarefree(m))
            continue;
        CubicFromUnit c;
        try {
            c = cubic_from_unit(m);
        } catch (const Error& e) {
            ASSERT_TRUE(e.code() == ErrorCode::Inapplicable || e.code() == ErrorCode::Degenerate) << m;
            continue;
        }
        unsigned r3 = quad::p_rank(quad::fundamental_discriminant(-m), 3, false);
        if (c.unramified_claim) {
            ++claims;
            ASSERT_GE(r3, 1u) << m;
        }
    }
    EXPECT_GT(claims, 10);
}

TEST(Certificate, JsonShape)
{
    auto j = to_json(d4_plan(5));
    EXPECT_EQ(j.rfind("{\"schema\":1,\"target\":", 0), 0u);
    EXPECT_NE(j.find("\"alternatives\":"), std::string::npos);
}
