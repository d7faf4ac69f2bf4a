#include "scholz/poly.hpp"

#include <algorithm>
#include <array>

#include "scholz/arith.hpp"
#include "scholz/error.hpp"

namespace scholz::poly {

using arith::u64;
using arith::mulmod;

mpz_class evaluate(const ZPoly& f, const mpz_class& x)
{
    mpz_class r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it)
        r = r * x + *it;
    return r;
}

ZPoly derivative(const ZPoly& f)
{
    ZPoly d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(f[i] * static_cast<unsigned long>(i));
    return d;
}

mpz_class resultant(const ZPoly& f, const ZPoly& g)
{
    std::size_t m = f.size() - 1, n = g.size() - 1;
    std::size_t N = m + n;
    if (N == 0)
        return 1;
    std::vector<std::vector<mpz_class>> M(N, std::vector<mpz_class>(N, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j)
            M[i][i + j] = f[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            M[n + i][i + j] = g[n - j];
    // fraction-free Gaussian elimination
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (M[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < N && M[r][k] == 0)
                ++r;
            if (r == N)
                return 0;
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            for (std::size_t j = k + 1; j < N; ++j) {
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]);
                mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[N - 1][N - 1];
}

mpz_class discriminant(const ZPoly& f)
{
    std::size_t n = f.size() - 1;
    mpz_class r = resultant(f, derivative(f));
    mpz_class d = r / f.back();
    return ((n * (n - 1) / 2) % 2) ? mpz_class(-d) : d;
}

bool has_rational_root(const ZPoly& f)
{
    if (f[0] == 0)
        return true;
    auto fac = arith::factor(f[0]);
    std::vector<mpz_class> divs{1};
    for (auto& pp : fac.factors) {
        std::size_t cur = divs.size();
        mpz_class pk = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            pk *= pp.prime;
            for (std::size_t i = 0; i < cur; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    for (auto& d : divs) {
        if (evaluate(f, d) == 0 || evaluate(f, -d) == 0)
            return true;
    }
    return false;
}

bool cubic_irreducible(const ZPoly& f)
{
    require(f.size() == 4 && f[3] == 1, ErrorCode::Precondition, "monic cubic expected");
    return !has_rational_root(f);
}

namespace {

using FP = std::vector<u64>; // mod p, low to high

void trim(FP& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

FP pmod(FP a, const FP& m, u64 p)
{
    trim(a);
    u64 inv = arith::invmod(m.back(), p);
    while (a.size() >= m.size()) {
        u64 c = mulmod(a.back(), inv, p);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
        trim(a);
    }
    return a;
}

FP pmul(const FP& a, const FP& b, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    FP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return r;
}

FP ppow(FP base, u64 e, const FP& m, u64 p)
{
    FP r{1};
    base = pmod(base, m, p);
    while (e) {
        if (e & 1)
            r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

FP pgcd(FP a, FP b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        FP r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 inv = arith::invmod(a.back(), p);
        for (auto& c : a)
            c = mulmod(c, inv, p);
    }
    return a;
}

void split_linear(const FP& g, u64 p, std::vector<u64>& out)
{
    if (g.size() == 2) {
        out.push_back((p - g[0]) % p);
        return;
    }
    for (u64 a = 1;; ++a) {
        FP h = ppow(FP{a % p, 1}, (p - 1) / 2, g, p);
        if (h.empty())
            h = {p - 1};
        else
            h[0] = (h[0] + p - 1) % p;
        FP d = pgcd(g, h, p);
        if (d.size() > 1 && d.size() < g.size()) {
            split_linear(d, p, out);
            // g / d
            FP q;
            FP rem = g;
            std::size_t qs = g.size() - d.size() + 1;
            q.assign(qs, 0);
            for (std::size_t k = qs; k-- > 0;) {
                u64 c = rem[k + d.size() - 1];
                q[k] = c;
                for (std::size_t i = 0; i < d.size(); ++i)
                    rem[k + i] = (rem[k + i] + p - mulmod(c, d[i], p)) % p;
            }
            split_linear(q, p, out);
            return;
        }
    }
}

} // namespace

std::vector<u64> roots_mod_p(const ZPoly& f, u64 p)
{
    FP a;
    for (auto& c : f) {
        mpz_class r = c % static_cast<unsigned long>(p);
        if (r < 0)
            r += static_cast<unsigned long>(p);
        a.push_back(r.get_ui());
    }
    trim(a);
    std::vector<u64> out;
    if (a.empty())
        raise(ErrorCode::Precondition, "roots_mod_p: zero polynomial");
    if (p < 64) {
        for (u64 x = 0; x < p; ++x) {
            u64 v = 0;
            for (auto it = a.rbegin(); it != a.rend(); ++it)
                v = (mulmod(v, x, p) + *it) % p;
            if (v == 0)
                out.push_back(x);
        }
        return out;
    }
    if (a.size() == 1)
        return out;
    // monic
    u64 inv = arith::invmod(a.back(), p);
    for (auto& c : a)
        c = mulmod(c, inv, p);
    FP xp = ppow(FP{0, 1}, p, a, p);
    if (xp.size() < 2)
        xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(xp);
    FP g = pgcd(a, xp, p);
    if (g.size() > 1)
        split_linear(g, p, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace scholz::poly

namespace scholz::poly {

namespace {

using QV = std::array<mpq_class, 3>;

struct CubicAlgebra {
    ZPoly f; // x^3 + f2 x^2 + f1 x + f0

    QV mul(const QV& x, const QV& y) const
    {
        std::array<mpq_class, 5> c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c[i + j] += x[i] * y[j];
        for (int k = 4; k >= 3; --k) {
            // x^k = -x^{k-3} (f0 + f1 x + f2 x^2)
            for (int i = 0; i < 3; ++i)
                c[k - 3 + i] -= c[k] * f[i];
            c[k] = 0;
        }
        return {c[0], c[1], c[2]};
    }

    bool integral(const QV& x) const
    {
        std::array<QV, 3> col{x, mul(x, QV{0, 1, 0}), mul(x, QV{0, 0, 1})};
        auto m = [&](int i, int j) -> const mpq_class& { return col[j][i]; };
        mpq_class tr = m(0, 0) + m(1, 1) + m(2, 2);
        mpq_class s2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                       m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        mpq_class det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                        m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                        m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        return tr.get_den() == 1 && s2.get_den() == 1 && det.get_den() == 1;
    }
};

} // namespace

unsigned cubic_index_valuation(const ZPoly& f, std::uint64_t p)
{
    require(f.size() == 4 && f[3] == 1, ErrorCode::Precondition, "monic cubic expected");
    require(arith::is_prime(p), ErrorCode::NotPrime, "cubic_index_valuation: p must be prime");
    CubicAlgebra A{f};
    std::array<QV, 3> b{QV{1, 0, 0}, QV{0, 1, 0}, QV{0, 0, 1}};
    const u64 P = p;
    unsigned v = 0;
    for (bool grown = true; grown;) {
        grown = false;
        for (u64 n = 1; n < P * P * P && !grown; ++n) {
            std::array<u64, 3> c{n % P, n / P % P, n / P / P};
            QV x;
            for (int i = 0; i < 3; ++i) {
                mpq_class w(mpz_class(c[i]), mpz_class(P));
                w.canonicalize();
                for (int k = 0; k < 3; ++k)
                    x[k] += w * b[i][k];
            }
            if (!A.integral(x))
                continue;
            int j = c[0] ? 0 : c[1] ? 1 : 2;
            // scale so the b_j coefficient is 1/p, then x replaces b_j
            u64 inv = arith::invmod(c[j], P);
            mpz_class carry = (mpz_class(c[j]) * inv - 1) / P;
            for (int k = 0; k < 3; ++k)
                x[k] = mpz_class(inv) * x[k] - carry * b[j][k];
            for (int i = 0; i < 3; ++i)
                if (i != j) {
                    mpz_class q = mpz_class(c[i]) * inv / P;
                    for (int k = 0; k < 3; ++k)
                        x[k] -= q * b[i][k];
                }
            b[j] = x;
            ++v;
            grown = true;
        }
    }
    return v;
}

mpz_class cubic_index(const ZPoly& f)
{
    mpz_class d = abs(discriminant(f));
    mpz_class idx = 1;
    for (auto& pp : arith::factor(d).factors) {
        if (pp.exponent < 2)
            continue;
        unsigned v = cubic_index_valuation(f, pp.prime.get_ui());
        for (unsigned i = 0; i < v; ++i)
            idx *= pp.prime;
    }
    return idx;
}

} // namespace scholz::poly
