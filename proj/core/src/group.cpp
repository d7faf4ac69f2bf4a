#include "scholz/group.hpp"

#include <algorithm>

#include "scholz/arith.hpp"

namespace scholz {

FiniteAbelianGroup::FiniteAbelianGroup(std::size_t n, std::size_t identity, Op mul)
    : n_(n), e_(identity), mul_(std::move(mul))
{
}

std::size_t FiniteAbelianGroup::pow(std::size_t a, std::uint64_t k) const
{
    std::size_t r = e_;
    while (k) {
        if (k & 1)
            r = mul_(r, a);
        k >>= 1;
        if (k)
            a = mul_(a, a);
    }
    return r;
}

std::uint64_t FiniteAbelianGroup::order(std::size_t a) const
{
    std::uint64_t ord = n_;
    auto f = arith::factor(static_cast<arith::i64>(n_));
    for (auto& pp : f.factors) {
        std::uint64_t p = pp.prime.get_ui();
        for (unsigned e = 0; e < pp.exponent; ++e) {
            if (pow(a, ord / p) == e_)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

std::vector<std::size_t> FiniteAbelianGroup::torsion(std::uint64_t m) const
{
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < n_; ++x) {
        if (pow(x, m) == e_)
            out.push_back(x);
    }
    return out;
}

unsigned FiniteAbelianGroup::p_rank(std::uint64_t p) const
{
    if (n_ % p != 0)
        return 0;
    std::size_t cnt = torsion(p).size();
    unsigned r = 0;
    while (cnt > 1) {
        cnt /= p;
        ++r;
    }
    return r;
}

FiniteAbelianGroup::Decomposition FiniteAbelianGroup::decompose() const
{
    Decomposition out;
    if (n_ == 1)
        return out;
    auto f = arith::factor(static_cast<arith::i64>(n_));

    // per prime: generator orders (descending) of the Sylow subgroup
    std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> parts;
    for (auto& pp : f.factors) {
        std::uint64_t p = pp.prime.get_ui();
        std::uint64_t pe = 1;
        for (unsigned i = 0; i < pp.exponent; ++i)
            pe *= p;
        std::uint64_t cofactor = n_ / pe;

        std::vector<char> in_sylow(n_, 0);
        std::vector<std::size_t> sylow;
        for (std::size_t x = 0; x < n_; ++x) {
            std::size_t y = pow(x, cofactor);
            if (!in_sylow[y]) {
                in_sylow[y] = 1;
                sylow.push_back(y);
            }
        }

        std::vector<char> in_h(n_, 0);
        std::vector<std::size_t> h{e_};
        in_h[e_] = 1;
        std::vector<std::pair<std::uint64_t, std::size_t>> basis;
        while (h.size() < sylow.size()) {
            std::uint64_t best_m = 1;
            std::size_t best = e_;
            for (std::size_t x : sylow) {
                std::uint64_t m = 1;
                std::size_t y = x;
                while (!in_h[y]) {
                    y = pow(y, p);
                    m *= p;
                }
                if (m > best_m) {
                    best_m = m;
                    best = x;
                }
            }
            std::size_t target = pow(best, best_m);
            std::size_t fix = e_;
            bool found = false;
            for (std::size_t y : h) {
                if (pow(y, best_m) == target) {
                    fix = y;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw Error(ErrorCode::ConsistencyFailure, "group decomposition: no correction element");
            // best * fix^{-1}; fix has p-power order dividing |h|
            std::size_t inv = pow(fix, h.size() - 1);
            std::size_t g = mul_(best, inv);
            basis.emplace_back(best_m, g);
            std::vector<std::size_t> nh;
            nh.reserve(h.size() * best_m);
            std::size_t gk = e_;
            for (std::uint64_t k = 0; k < best_m; ++k) {
                for (std::size_t y : h) {
                    std::size_t z = mul_(y, gk);
                    if (!in_h[z]) {
                        in_h[z] = 1;
                        nh.push_back(z);
                    }
                }
                gk = mul_(gk, g);
            }
            h.insert(h.end(), nh.begin(), nh.end());
        }
        std::sort(basis.begin(), basis.end(), [](auto& a, auto& b) { return a.first > b.first; });
        parts.push_back(std::move(basis));
    }

    std::size_t k = 0;
    for (auto& b : parts)
        k = std::max(k, b.size());
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t ord = 1;
        std::size_t g = e_;
        for (auto& b : parts) {
            if (i < b.size()) {
                ord *= b[i].first;
                g = mul_(g, b[i].second);
            }
        }
        out.divisors.push_back(ord);
        out.generators.push_back(g);
    }
    std::reverse(out.divisors.begin(), out.divisors.end());
    std::reverse(out.generators.begin(), out.generators.end());
    return out;
}

} // namespace scholz
