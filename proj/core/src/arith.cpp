#include "scholz/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace scholz {

std::string_view to_string(ErrorCode c) noexcept
{
    switch (c) {
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::Nonresidue: return "nonresidue";
    case ErrorCode::PerfectSquare: return "perfect_square";
    case ErrorCode::BoundExceeded: return "bound_exceeded";
    case ErrorCode::FactorBudgetExceeded: return "factor_budget_exceeded";
    case ErrorCode::NotSplit: return "not_split";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Inapplicable: return "inapplicable";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::InsufficientUnits: return "insufficient_units";
    case ErrorCode::NotSaturated: return "not_saturated";
    case ErrorCode::ConsistencyFailure: return "consistency_failure";
    case ErrorCode::Usage: return "usage";
    }
    return "unknown";
}

} // namespace scholz

namespace scholz::arith {

namespace {

constexpr u64 trial_limit = 1'000'000;

const std::vector<u64>& small_primes()
{
    static const std::vector<u64> ps = primes_up_to(trial_limit);
    return ps;
}

bool strong_probable_prime(u64 n, u64 a)
{
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

bool strong_probable_prime(const mpz_class& n, unsigned long a)
{
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    mpz_class x, base = a, nm1 = n - 1;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1)
            return true;
    }
    return false;
}

// Brent's variant of Pollard rho.  Returns a nontrivial factor or 0 on failure.
u64 brent(u64 n, u64 c, u64 max_iter)
{
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    const u64 m = 128;
    u64 r = 1, iters = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
        x = y;
        for (u64 i = 0; i < r; ++i)
            y = f(y);
        u64 k = 0;
        do {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
            iters += m;
        } while (k < r && g == 1);
        r <<= 1;
    } while (g == 1 && iters < max_iter);
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return (g == 1 || g == n) ? 0 : g;
}

mpz_class brent(const mpz_class& n, unsigned long c, u64 max_iter)
{
    mpz_class y = 2, x = 2, ys = 2, q = 1, g = 1, t;
    const u64 m = 128;
    u64 r = 1, iters = 0;
    auto f = [&](mpz_class& v) { v = (v * v + c) % n; };
    do {
        x = y;
        for (u64 i = 0; i < r; ++i)
            f(y);
        u64 k = 0;
        do {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                f(y);
                t = abs(x - y);
                q = q * t % n;
            }
            g = gcd(q, n);
            k += m;
            iters += m;
        } while (k < r && g == 1);
        r <<= 1;
    } while (g == 1 && iters < max_iter);
    if (g == n) {
        do {
            f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return (g == 1 || g == n) ? mpz_class(0) : g;
}

void split(const mpz_class& n, u64 budget, std::map<mpz_class, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (is_square(n)) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        std::map<mpz_class, unsigned> sub;
        split(r, budget, sub);
        for (auto& [p, e] : sub)
            out[p] += 2 * e;
        return;
    }
    for (unsigned long c = 1; c <= 8; ++c) {
        mpz_class d;
        if (n.fits_ulong_p()) {
            u64 v = brent(static_cast<u64>(n.get_ui()), c, budget);
            d = static_cast<unsigned long>(v);
        } else {
            d = brent(n, c, budget);
        }
        if (d != 0) {
            split(d, budget, out);
            split(n / d, budget, out);
            return;
        }
    }
    raise(ErrorCode::FactorBudgetExceeded, "factorization budget exceeded for " + n.get_str());
}

} // namespace

mpz_class Factorization::product() const
{
    mpz_class r = 1, t;
    for (auto& pp : factors) {
        mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        r *= t;
    }
    return r;
}

u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 invmod(u64 a, u64 m)
{
    i128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        i128 q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    require(r == 1, ErrorCode::Precondition, "not invertible");
    if (t < 0)
        t += m;
    return static_cast<u64>(t);
}

u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(i64 n)
{
    if (n < 0)
        return false;
    u64 r = isqrt(static_cast<u64>(n));
    return r * r == static_cast<u64>(n);
}

bool is_square(const mpz_class& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    static constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : bases) {
        if (n % p == 0)
            return n == p;
    }
    for (u64 a : bases) {
        if (!strong_probable_prime(n, a))
            return false;
    }
    return true;
}

bool is_prime(const mpz_class& n)
{
    if (sgn(n) < 0)
        return false;
    if (n.fits_ulong_p())
        return is_prime(static_cast<u64>(n.get_ui()));
    const auto& ps = small_primes();
    for (std::size_t i = 0; i < 24; ++i) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), ps[i]))
            return false;
    }
    for (std::size_t i = 0; i < 24; ++i) {
        if (!strong_probable_prime(n, ps[i]))
            return false;
    }
    return true;
}

Factorization factor(const mpz_class& n, u64 rho_iterations)
{
    require(n != 0, ErrorCode::Precondition, "factor: n must be nonzero");
    Factorization f;
    f.value = n;
    mpz_class m = abs(n);
    std::map<mpz_class, unsigned> found;
    for (u64 p : small_primes()) {
        if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0)
            break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            found[mpz_class(static_cast<unsigned long>(p))] = e;
        }
    }
    split(m, rho_iterations, found);
    for (auto& [p, e] : found)
        f.factors.push_back({p, e});
    return f;
}

Factorization factor(i64 n) { return factor(mpz_class(static_cast<long>(n))); }

namespace {

/// a mod n in [0, n) for any n >= 1, including n above INT64_MAX.
u64 residue(i64 a, u64 n)
{
    if (a >= 0)
        return static_cast<u64>(a) % n;
    u64 r = (static_cast<u64>(-(a + 1)) + 1) % n;
    return r == 0 ? 0 : n - r;
}

} // namespace

int jacobi(i64 a, u64 n)
{
    require(n % 2 == 1, ErrorCode::Precondition, "jacobi: modulus must be odd and positive");
    u64 x = residue(a, n);
    u64 m = n;
    int t = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            u64 r = m & 7;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(x, m);
        if ((x & 3) == 3 && (m & 3) == 3)
            t = -t;
        x %= m;
    }
    return m == 1 ? t : 0;
}

int jacobi(const mpz_class& a, const mpz_class& n)
{
    require(sgn(n) > 0 && mpz_odd_p(n.get_mpz_t()), ErrorCode::Precondition,
            "jacobi: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

u64 sqrt_mod_prime(i64 a, u64 p)
{
    require(p == 2 || (p > 2 && is_prime(p)), ErrorCode::NotPrime, "sqrt_mod_prime: modulus not prime");
    u64 x = residue(a, p);
    if (x == 0 || p == 2)
        return x;
    require(powmod(x, (p - 1) / 2, p) == 1, ErrorCode::Nonresidue, "sqrt_mod_prime: nonresidue");
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    u64 c = powmod(z, q, p);
    u64 r = powmod(x, (q + 1) / 2, p);
    u64 t = powmod(x, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return std::min(r, p - r);
}

std::vector<u64> primes_up_to(u64 n)
{
    std::vector<u64> out;
    if (n < 2)
        return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i])
            continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i)
            comp[j] = true;
    }
    return out;
}

u64 next_prime(u64 n)
{
    u64 c = n + 1;
    while (!is_prime(c))
        ++c;
    return c;
}

bool is_squarefree(i64 n)
{
    if (n == 0)
        return false;
    u64 m = static_cast<u64>(n < 0 ? -n : n);
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % (p * p) == 0)
            return false;
        if (m % p == 0)
            m /= p;
    }
    return true;
}

i64 squarefree_kernel(i64 n)
{
    require(n != 0, ErrorCode::Precondition, "squarefree_kernel of 0");
    i64 sign = n < 0 ? -1 : 1;
    auto f = factor(n);
    i64 k = 1;
    for (auto& pp : f.factors) {
        if (pp.exponent % 2)
            k *= pp.prime.get_si();
    }
    return sign * k;
}

u64 order_mod_prime(u64 a, u64 p)
{
    a %= p;
    require(a != 0, ErrorCode::Precondition, "order of 0");
    u64 ord = p - 1;
    auto f = factor(static_cast<i64>(p - 1));
    for (auto& pp : f.factors) {
        u64 q = pp.prime.get_ui();
        for (unsigned e = 0; e < pp.exponent; ++e) {
            if (powmod(a, ord / q, p) == 1)
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

} // namespace scholz::arith
