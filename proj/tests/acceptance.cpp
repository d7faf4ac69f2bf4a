// One PASS/FAIL line per acceptance criterion.  Exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "scholz/addchain.hpp"
#include "scholz/arith.hpp"
#include "scholz/construction.hpp"
#include "scholz/cubic.hpp"
#include "scholz/discbounds.hpp"
#include "scholz/ell2.hpp"
#include "scholz/quadratic.hpp"

#include "gen.hpp"
#include "oracles.hpp"

using namespace scholz;
using arith::i64;
using arith::u64;

namespace {

// limits and tolerances
constexpr double budget_reciprocity_s = 10;
constexpr double budget_pell_s = 120;
constexpr double budget_reflection_s = 600;
constexpr double budget_v4_s = 300;
constexpr u64 reciprocity_max = 500;
constexpr u64 pell_max = 300;
constexpr i64 reflection_max = 20000;
constexpr u64 l3_max = 200;
constexpr u64 l3_oracle_max = 100;
constexpr u64 addchain_max = 1024;
constexpr unsigned scholz_brauer_max = 8;
constexpr int mutations = 1000;
constexpr long double rd_rel_tol = 1e-12L;
constexpr unsigned perron_max = 12;
constexpr double slope_lo = 0.45, slope_hi = 0.62;
constexpr u64 v4_X = 1'000'000'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<u64> primes_mod(u64 n, u64 m, u64 r)
{
    std::vector<u64> out;
    for (u64 p : arith::primes_up_to(n))
        if (p % m == r)
            out.push_back(p);
    return out;
}

Outcome reciprocity()
{
    auto t0 = Clock::now();
    auto ps = primes_mod(reciprocity_max, 4, 1);
    std::size_t pairs = 0, bad = 0;
    for (u64 p : ps)
        for (u64 q : ps) {
            if (p == q || arith::jacobi(static_cast<i64>(p), q) != 1)
                continue;
            ++pairs;
            bad += !ell2::scholz_reciprocity_check(p, q).equal;
        }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << pairs << " ordered pairs, " << bad << " violations, " << s << " s";
    return {bad == 0 && pairs > 0 && s < budget_reciprocity_s, d.str()};
}

Outcome pell()
{
    auto t0 = Clock::now();
    auto ps = primes_mod(pell_max, 4, 1);
    std::size_t pairs = 0, bad = 0, cyc8 = 0;
    for (u64 p : ps)
        for (u64 q : ps) {
            if (p >= q)
                continue;
            ++pairs;
            auto c = ell2::negative_pell_classify(p, q);
            auto t = ell2::pell_ground_truth(p, q);
            bool ok = !ell2::pell_mismatch(c, t);
            if (c.pell_case == ell2::PellCase::Cyclic8Plus) {
                ++cyc8;
                ok = ok && t.cl2_plus.size() == 1 && t.cl2_plus[0] % 8 == 0;
            }
            bad += !ok;
        }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << pairs << " pairs, " << cyc8 << " cyclic8plus, " << bad << " violations, " << s << " s";
    return {bad == 0 && s < budget_pell_s, d.str()};
}

Outcome reflection()
{
    auto t0 = Clock::now();
    std::size_t n = 0, bad = 0, skipped = 0;
    for (i64 m = -reflection_max; m <= reflection_max; ++m) {
        if (m == 0 || m == 1 || m == -1 || !arith::is_squarefree(m))
            continue;
        try {
            ++n;
            bad += !ell2::reflection_check(m).ok;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Inapplicable)
                throw;
            ++skipped;
        }
    }
    auto a = ell2::reflection_check(-19677);
    bool anchor1 = a.r_plus == 2;
    bool anchor2 = quad::class_number(quad::fundamental_discriminant(-182)) % 3 == 0;
    double s = seconds_since(t0);
    std::ostringstream d;
    d << n << " radicands (" << skipped << " skipped: m = +-3), " << bad << " violations, rank(-19677) = "
      << a.r_plus << ", 3 | h(-182): " << (anchor2 ? "yes" : "no") << ", " << s << " s";
    return {bad == 0 && anchor1 && anchor2 && s < budget_reflection_s, d.str()};
}

Outcome primary()
{
    quad::FundamentalDiscriminant D(-20);
    auto a = ell2::is_2_primary(D, 29);
    auto b = ell2::is_2_primary(D, 89);
    auto r = ell2::ray_class_number(D, 29);
    bool witness = false, residue = false;
    for (auto& s : a.singular_basis)
        witness = witness || (s.label == "omega" && s.element.x == 4 && s.element.y == 1 && s.character.is_minus());
    u64 res = 0;
    for (auto& s : b.singular_basis)
        if (s.label == "omega") {
            res = s.residue;
            residue = s.residue == 25 && s.character.is_plus();
        }
    std::ostringstream d;
    d << "29 primary: " << a.primary << ", omega nonresidue: " << witness << "; 89 primary: " << b.primary
      << ", residue " << res << "; ray class number " << r.value;
    return {!a.primary && witness && b.primary && residue && r.value == 28, d.str()};
}

Outcome constructions()
{
    auto c = construct::d4_plan(5);
    std::string q;
    for (auto& [k, v] : c.base_data)
        if (k == "q")
            q = v;
    bool d4 = c.complete && q == "29" && c.conditions.size() >= 3;
    for (std::size_t i = 0; i < 3 && i < c.conditions.size(); ++i)
        d4 = d4 && c.conditions[i].holds && !c.conditions[i].witness.empty();

    auto g = construct::cubic_from_unit(182);
    bool poly = g.poly == poly::ZPoly{-1402, -3, 0, 1};
    bool disc = g.disc == mpz_class(-728) * 270 * 270;
    bool companion = g.companion_a && *g.companion_a == 17 && g.companion_disc && *g.companion_disc == 4;
    bool det = construct::to_json(construct::d4_plan(5)) == construct::to_json(c) &&
               construct::to_json(construct::cubic_from_unit(182).certificate) == construct::to_json(g.certificate);
    std::ostringstream d;
    d << "d4_plan(5): q = " << q << ", complete " << c.complete << "; g = x^3 - 3x - " << -g.poly[0]
      << ", disc " << g.disc << " = -728 * 270^2: " << disc << ", companion disc " << (companion ? "4" : "?")
      << ", deterministic " << det;
    return {d4 && poly && disc && companion && det, d.str()};
}

Outcome l3()
{
    auto ps = primes_mod(l3_max, 3, 1);
    std::size_t pairs = 0, skipped = 0, bad = 0;
    for (u64 p : ps)
        for (u64 q : ps) {
            if (p >= q || !cubic::is_cubic_residue(p, q) || !cubic::is_cubic_residue(q, p))
                continue;
            try {
                bad += !cubic::l3_reciprocity_check(p, q).biconditional_holds;
                ++pairs;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NotSaturated)
                    throw;
                ++skipped;
            }
        }
    std::size_t triples = 0, disagree = 0;
    for (u64 q : primes_mod(l3_oracle_max, 3, 1)) {
        auto K = cubic::period_field(q);
        auto sys = cubic::unit_search(K, 50);
        for (u64 p : primes_mod(l3_oracle_max, 3, 1)) {
            if (p == q || !cubic::splits_completely(K, p))
                continue;
            auto P = cubic::split_prime(K, p);
            for (const auto& u : sys.units) {
                auto s = cubic::symbolic_class(K, u, p);
                auto v = s.squared ? cubic::mul(K, u, u) : u;
                std::array<u64, 3> img{cubic::reduce(K, v, P, 0), cubic::reduce(K, v, P, 1), cubic::reduce(K, v, P, 2)};
                ++triples;
                disagree += oracle::congruence_level(img, p) != s.level;
            }
        }
    }
    std::ostringstream d;
    d << pairs << " mutually split pairs (" << skipped << " unsaturated), " << bad << " violations; oracle on "
      << triples << " triples, " << disagree << " disagreements";
    return {bad == 0 && pairs > 0 && disagree == 0 && triples > 0, d.str()};
}

Outcome addchains()
{
    std::size_t bad = 0;
    for (u64 n = 1; n <= addchain_max; ++n) {
        auto c = addchain::optimal_chain(n);
        bad += c.length != oracle::chain_length(n) || !addchain::verify(c.chain.terms, n);
    }
    bool sb = true;
    for (unsigned n = 1; n <= scholz_brauer_max; ++n)
        sb = sb && addchain::scholz_brauer_check(n).holds;

    gen::Rng rng(1937);
    int made = 0, accepted = 0;
    while (made < mutations) {
        auto t = addchain::optimal_chain(rng.uniform(3, addchain_max)).chain.terms;
        std::size_t k = rng.uniform(1, t.size() - 1);
        switch (rng.uniform(0, 2)) {
        case 0: t[k] += rng.uniform(1, 5); break;
        case 1: t.insert(t.begin() + static_cast<long>(k), t[k]); break;
        default: std::swap(t[k - 1], t[k]);
        }
        if (oracle::chain_valid(t))
            continue;
        ++made;
        accepted += addchain::verify(t);
    }
    std::ostringstream d;
    d << "l(n) mismatches for n <= " << addchain_max << ": " << bad << "; Scholz-Brauer n <= " << scholz_brauer_max
      << ": " << (sb ? "holds" : "fails") << "; " << accepted << " of " << made << " invalid chains accepted";
    return {bad == 0 && sb && accepted == 0, d.str()};
}

Outcome disc_bounds()
{
    using namespace discbounds;
    bool rd = true;
    for (u64 p : arith::primes_up_to(23)) {
        if (p == 2)
            continue;
        auto r = cyclotomic_rd(p);
        long double want = std::pow(static_cast<long double>(p), static_cast<long double>(p - 2) / (p - 1));
        rd = rd && consistent(r) && std::fabs(r.rd / want - 1) < rd_rel_tol;
    }
    bool perron = true;
    for (auto& r : perron_scan(perron_max))
        perron = perron && r.below_2n;
    bool wief = wieferich_scan(2000) == std::vector<u64>{1093};
    auto c3 = minimal_disc_scan(3);
    auto c2 = minimal_disc_scan(2);
    bool cubic = c3.minimum.disc == -23;
    bool quad = c2.minimum_real.disc == 5 && c2.second_real.disc == 8;
    std::ostringstream d;
    d << "cyclotomic rd p <= 23: " << rd << ", Perron n <= " << perron_max << ": " << perron << ", Wieferich: " << wief
      << ", cubic min " << c3.minimum.disc << ", real quadratic " << c2.minimum_real.disc << " then "
      << c2.second_real.disc;
    return {rd && perron && wief && cubic && quad, d.str()};
}

Outcome v4()
{
    auto t0 = Clock::now();
    auto c = discbounds::v4_count(v4_X);
    double s = seconds_since(t0);
    std::ostringstream d;
    d << "N(" << v4_X << ") = " << c.count << ", slope " << c.slope << " over " << c.grid.size() << " points from "
      << c.grid.front().first << ", " << s << " s";
    return {c.slope >= slope_lo && c.slope <= slope_hi && s < budget_v4_s, d.str()};
}

Outcome determinism()
{
    const std::vector<std::vector<std::string>> scans{
        {"reciprocity", "--max", "500"},
        {"pell", "--max", "300"},
        {"reflect", "--max", "20000"},
        {"knot", "--max", "100"},
        {"recip3", "--max", "200"},
        {"plan-d4", "--max", "200"},
        {"cubic-from-unit", "--max", "500"},
        {"addchain", "--range", "1..1024"},
        {"scholz-brauer", "--max", "8"},
        {"perron", "--max", "12"},
        {"wieferich", "--max", "2000"},
        {"rd", "--max", "23"},
        {"count-v4", "100000000"},
    };
    std::vector<std::string> differ;
    for (const auto& scan : scans) {
        std::string out[2];
        for (int k = 0; k < 2; ++k) {
            std::vector<std::string> args;
            args.insert(args.end(), scan.begin(), scan.end());
            args.insert(args.end(), {"--jobs", k == 0 ? "1" : "8"});
            std::ostringstream o, e;
            cli::run(args, o, e);
            out[k] = o.str();
        }
        if (out[0] != out[1] || out[0].empty())
            differ.push_back(scan[0]);
    }
    std::ostringstream d;
    d << scans.size() << " scans compared, " << differ.size() << " differ";
    for (auto& s : differ)
        d << " " << s;
    return {differ.empty(), d.str()};
}

} // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria{reciprocity, pell,       reflection, primary, constructions,
                                                         l3,          addchains,  disc_bounds, v4,     determinism};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
    }
    return failed ? 1 : 0;
}
