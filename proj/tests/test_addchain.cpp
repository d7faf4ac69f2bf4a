#include <gtest/gtest.h>


#include "scholz/addchain.hpp"
#include "scholz/error.hpp"

#include "gen.hpp"
#include "oracles.hpp"

using namespace scholz::addchain;

TEST(Chain, Examples)
{
    EXPECT_EQ(optimal_chain(1).length, 0u);
    auto two = optimal_chain(2);
    EXPECT_EQ(two.length, 1u);
    EXPECT_EQ(two.chain.terms, (std::vector<u64>{1, 2}));
    auto c15 = optimal_chain(15);
    EXPECT_EQ(c15.length, 5u);
    EXPECT_TRUE(verify(c15.chain.terms, 15));
    EXPECT_EQ(chain_length(1087), 14u);
    EXPECT_THROW(optimal_chain(0), scholz::Error);
    EXPECT_THROW(optimal_chain(default_bound + 1), scholz::Error);
}

TEST(Chain, OracleTo256)
{
    for (u64 n = 1; n <= 256; ++n) {
        auto c = optimal_chain(n);
        ASSERT_EQ(c.length, oracle::chain_length(n)) << n;
        ASSERT_TRUE(verify(c.chain.terms, n));
        ASSERT_TRUE(oracle::chain_valid(c.chain.terms));
        ASSERT_LE(c.length, binary_length(n));
        ASSERT_GE(c.length, lower_bound(n));
    }
}

TEST(Chain, Subadditivity)
{
    for (u64 n = 1; n <= 300; ++n) {
        ASSERT_LE(chain_length(2 * n), chain_length(n) + 1);
        for (u64 m = 2; m * n <= 600; ++m)
            ASSERT_LE(chain_length(m * n), chain_length(m) + chain_length(n)) << m << " " << n;
    }
}

TEST(Verify, RejectsMalformed)
{
    EXPECT_TRUE(verify({1, 2, 3, 6, 12, 15}));
    EXPECT_FALSE(verify({}));
    EXPECT_FALSE(verify({2, 4}));
    EXPECT_FALSE(verify({1, 2, 2, 4}));
    EXPECT_FALSE(verify({1, 2, 5}));
    EXPECT_FALSE(verify({1, 3}));
    EXPECT_FALSE(verify({1, 2, 4}, 5));
}

TEST(Verify, Fuzz)
{
    gen::Rng rng(41);
    std::vector<std::vector<u64>> chains(513);
    for (u64 n = 3; n < chains.size(); ++n)
        chains[n] = optimal_chain(n).chain.terms;
    int rejected = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto& terms = chains[rng.uniform(3, chains.size() - 1)];
        auto bad = terms;
        switch (rng.uniform(0, 3)) {
        case 0: // perturb a term
            bad[rng.uniform(1, bad.size() - 1)] += rng.uniform(1, 3);
            break;
        case 1: // duplicate a term
        {
            std::size_t k = rng.uniform(0, bad.size() - 1);
            bad.insert(bad.begin() + static_cast<long>(k), bad[k]);
            break;
        }
        case 2: // swap two neighbours
        {
            std::size_t k = rng.uniform(1, bad.size() - 1);
            std::swap(bad[k - 1], bad[k]);
            break;
        }
        default: // drop the starting 1
            bad.erase(bad.begin());
        }
        bool valid = oracle::chain_valid(bad);
        ASSERT_EQ(verify(bad), valid);
        rejected += !valid;
    }
    EXPECT_GT(rejected, 2000);
}

TEST(ScholzBrauer, SmallN)
{
    auto one = scholz_brauer_check(1);
    EXPECT_EQ(one.l_n, 0u);
    EXPECT_EQ(one.bound, 0u);
    EXPECT_TRUE(one.holds);
    for (unsigned n = 1; n <= 8; ++n) {
        auto r = scholz_brauer_check(n);
        EXPECT_TRUE(r.holds) << n;
        EXPECT_EQ(r.l_mersenne, chain_length((u64{1} << n) - 1));
        EXPECT_EQ(r.bound, n - 1 + r.l_n);
    }
    EXPECT_THROW(scholz_brauer_check(11), scholz::Error);
}

TEST(Bounds, Values)
{
    EXPECT_EQ(binary_length(15), 6u);
    EXPECT_EQ(binary_length(1), 0u);
    EXPECT_EQ(lower_bound(1024), 10u);
    for (u64 n = 2; n < 5000; ++n)
        ASSERT_LE(lower_bound(n), binary_length(n));
}
