#include <gtest/gtest.h>

#include <cmath>

#include "scholz/arith.hpp"
#include "scholz/discbounds.hpp"
#include "scholz/error.hpp"

#include "oracles.hpp"

using namespace scholz::discbounds;

TEST(Cyclotomic, Examples)
{
    auto r3 = cyclotomic_rd(3);
    EXPECT_EQ(r3.disc, -3);
    EXPECT_NEAR(static_cast<double>(r3.rd), std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(static_cast<double>(cyclotomic_rd(5).rd), 3.3437015248821100, 1e-12);
    EXPECT_THROW(cyclotomic_rd(9), scholz::Error);
}

TEST(Cyclotomic, FormulaTo23)
{
    for (u64 p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
        auto r = cyclotomic_rd(p);
        EXPECT_TRUE(consistent(r)) << p;
        long double want = std::pow(static_cast<long double>(p), static_cast<long double>(p - 2) / (p - 1));
        EXPECT_LT(std::fabs(r.rd / want - 1), 1e-12L) << p;
    }
}

TEST(Minkowski, Values)
{
    auto a = minkowski_rd_bound(2, 1);
    EXPECT_LT(a.disc_bound, 3.0L);
    auto b = minkowski_rd_bound(2, 0);
    EXPECT_LE(b.disc_bound, 5.0L);
    auto c = minkowski_rd_bound(20, 0);
    EXPECT_LT(c.rd_bound, 7.389L);
    EXPECT_NEAR(static_cast<double>(c.rd_bound), 5.80026, 1e-4);
    EXPECT_EQ(a.ratio, mpq_class(2)); // 2^2 / 2!
    EXPECT_THROW(minkowski_rd_bound(3, 2), scholz::Error);
}

TEST(Minkowski, MonotoneInN)
{
    long double prev = 0;
    for (unsigned n = 2; n <= 40; ++n) {
        auto m = minkowski_rd_bound(n, 0);
        EXPECT_GT(m.rd_bound, prev);
        prev = m.rd_bound;
    }
    EXPECT_LT(prev, std::exp(2.0L));
}

TEST(Perron, Values)
{
    auto two = perron_record(2);
    EXPECT_EQ(two.record.disc, 8);
    EXPECT_NEAR(static_cast<double>(two.record.rd), std::sqrt(8.0), 1e-12);
    for (auto& r : perron_scan(12)) {
        EXPECT_TRUE(r.formula_holds) << r.record.degree;
        EXPECT_TRUE(r.below_2n) << r.record.degree;
        EXPECT_TRUE(consistent(r.record));
        scholz::poly::ZPoly f(r.record.degree + 1, 0);
        f[0] = -2;
        f.back() = 1;
        EXPECT_EQ(abs(r.record.disc), abs(scholz::poly::discriminant(f)));
    }
    EXPECT_THROW(perron_scan(65), scholz::Error);
}

TEST(Wieferich, To2000)
{
    EXPECT_EQ(wieferich_scan(2000), std::vector<u64>{1093});
    auto big = wieferich_scan(10000);
    EXPECT_EQ(big, (std::vector<u64>{1093, 3511}));
    for (u64 p : scholz::arith::primes_up_to(4000)) {
        mpz_class m = mpz_class(static_cast<unsigned long>(p)) * p, r;
        mpz_class base = 2;
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), p - 1, m.get_mpz_t());
        bool w = r == 1;
        EXPECT_EQ(w, p == 1093 || p == 3511) << p;
    }
}

TEST(MinDisc, Quadratic)
{
    auto r = minimal_disc_scan(2);
    EXPECT_EQ(r.minimum.disc, -3);
    EXPECT_EQ(r.minimum_real.disc, 5);
    EXPECT_EQ(r.second_real.disc, 8);
}

TEST(MinDisc, Cubic)
{
    auto r = minimal_disc_scan(3);
    EXPECT_EQ(r.minimum.disc, -23);
    ASSERT_FALSE(r.discs_found.empty());
    // the Minkowski bound stays below every field found
    for (i64 d : r.discs_found) {
        unsigned r2 = d < 0 ? 1 : 0;
        EXPECT_LE(minkowski_rd_bound(3, r2).disc_bound, static_cast<long double>(std::llabs(d)));
    }
    EXPECT_LE(minkowski_rd_bound(2, 1).disc_bound, 3.0L);
    EXPECT_LE(minkowski_rd_bound(2, 0).disc_bound, 5.0L);
    EXPECT_THROW(minimal_disc_scan(4), scholz::Error);
}

TEST(V4, AgainstPairOracle)
{
    for (u64 X : {100u, 144u, 5000u, 100000u}) {
        auto fields = v4_fields(X);
        auto want = oracle::v4_fields(static_cast<i64>(X));
        ASSERT_EQ(fields.size(), want.size()) << X;
        for (auto& f : fields) {
            ASSERT_TRUE(want.count({f.d1, f.d2, f.d3})) << f.d1 << " " << f.d2 << " " << f.d3;
            ASSERT_EQ(f.disc, mpz_class(static_cast<long>(f.d1)) * f.d2 * f.d3);
        }
        EXPECT_EQ(v4_count_only(X), fields.size());
    }
    EXPECT_TRUE(v4_fields(143).empty());
    auto first = v4_fields(144);
    ASSERT_EQ(first.size(), 1u);
    EXPECT_EQ(first[0].d1, -4);
    EXPECT_EQ(first[0].d2, -3);
    EXPECT_EQ(first[0].d3, 12);
}

TEST(V4, TripleClosure)
{
    auto third = [](i64 x, i64 y) { return oracle::field_disc(scholz::arith::squarefree_kernel(x * y)); };
    for (auto& f : v4_fields(1'000'000)) {
        ASSERT_EQ(third(f.d1, f.d2), f.d3);
        ASSERT_EQ(third(f.d1, f.d3), f.d2);
        ASSERT_EQ(third(f.d2, f.d3), f.d1);
    }
}

TEST(V4, SlopeApproachesHalfFromAbove)
{
    auto a = v4_count(100'000'000);
    auto b = v4_count(1'000'000'000);
    EXPECT_GT(b.slope, 0.45);
    EXPECT_LT(b.slope, 0.62);
    EXPECT_EQ(b.grid.back().first, 1'000'000'000u);
    EXPECT_GT(b.count, a.count);
    // the log factor pushes the finite-range slope above 1/2; it drifts down as X grows
    EXPECT_LT(b.slope, a.slope);
    EXPECT_GT(b.slope, 0.5);
}
