#include "scholz/addchain.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "scholz/error.hpp"

namespace scholz::addchain {

bool verify(const std::vector<u64>& a)
{
    if (a.empty() || a[0] != 1)
        return false;
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (a[k] <= a[k - 1])
            return false;
        bool ok = false;
        // two-pointer over the sorted prefix
        std::size_t i = 0, j = k - 1;
        while (i <= j && !ok) {
            u64 s = a[i] + a[j];
            if (s == a[k])
                ok = true;
            else if (s < a[k])
                ++i;
            else if (j == 0)
                break;
            else
                --j;
        }
        if (!ok)
            return false;
    }
    return true;
}

bool verify(const std::vector<u64>& a, u64 n) { return verify(a) && a.back() == n; }

unsigned binary_length(u64 n)
{
    require(n >= 1, ErrorCode::Precondition, "binary_length: n >= 1");
    return static_cast<unsigned>(std::bit_width(n) - 1 + std::popcount(n) - 1);
}

unsigned lower_bound(u64 n)
{
    require(n >= 1, ErrorCode::Precondition, "lower_bound: n >= 1");
    unsigned lg = static_cast<unsigned>(std::bit_width(n - 1)); // ceil(log2 n) for n >= 1
    if (n == 1)
        return 0;
    double s = std::log2(static_cast<double>(n)) + std::log2(static_cast<double>(std::popcount(n))) - 2.13;
    unsigned sb = s > 0 ? static_cast<unsigned>(std::ceil(s - 1e-9)) : 0;
    return std::max(lg, sb);
}

namespace {

struct Search {
    u64 n;
    unsigned depth;
    std::vector<u64> a;

    bool dfs(unsigned k)
    {
        u64 top = a[k];
        if (top == n)
            return true;
        if (k == depth)
            return false;
        if ((top << (depth - k)) < n)
            return false;
        // candidate sums, largest first, without repeats
        std::vector<u64> cand;
        for (unsigned i = k + 1; i-- > 0;)
            for (unsigned j = i + 1; j-- > 0;) {
                u64 s = a[i] + a[j];
                if (s <= top)
                    break;
                if (s <= n)
                    cand.push_back(s);
            }
        std::sort(cand.begin(), cand.end(), std::greater<>());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (u64 s : cand) {
            // after this step the chain can at most double each remaining step
            if ((s << (depth - k - 1)) < n)
                break;
            a[k + 1] = s;
            if (dfs(k + 1))
                return true;
        }
        return false;
    }
};

std::mutex memo_mutex;
std::unordered_map<u64, unsigned> memo;

} // namespace

OptimalChain optimal_chain(u64 n, u64 bound)
{
    require(n >= 1 && n <= bound, ErrorCode::BoundExceeded,
            "optimal_chain: n outside [1, " + std::to_string(bound) + "]");
    OptimalChain r;
    if (n == 1) {
        r.chain.terms = {1};
        return r;
    }
    for (unsigned d = lower_bound(n);; ++d) {
        Search s{n, d, std::vector<u64>(d + 1)};
        s.a[0] = 1;
        if (s.dfs(0)) {
            r.chain.terms = s.a;
            r.length = d;
            break;
        }
    }
    if (!verify(r.chain.terms, n))
        raise(ErrorCode::ConsistencyFailure, "optimal_chain produced an invalid chain");
    std::lock_guard lk(memo_mutex);
    memo[n] = r.length;
    return r;
}

unsigned chain_length(u64 n, u64 bound)
{
    {
        std::lock_guard lk(memo_mutex);
        if (auto it = memo.find(n); it != memo.end())
            return it->second;
    }
    return optimal_chain(n, bound).length;
}

ScholzBrauer scholz_brauer_check(unsigned n)
{
    require(n >= 1 && n <= 10, ErrorCode::BoundExceeded, "scholz_brauer_check: n must be in 1..10");
    ScholzBrauer r;
    r.n = n;
    r.l_n = chain_length(n);
    r.l_mersenne = chain_length((u64{1} << n) - 1);
    r.bound = n - 1 + r.l_n;
    r.holds = r.l_mersenne <= r.bound;
    return r;
}

} // namespace scholz::addchain
