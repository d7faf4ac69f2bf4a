#include "scholz/discbounds.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "scholz/arith.hpp"
#include "scholz/error.hpp"
#include "scholz/quadratic.hpp"

namespace scholz::discbounds {

std::string to_string(Family f)
{
    switch (f) {
    case Family::Cyclotomic: return "cyclotomic";
    case Family::Perron: return "perron";
    case Family::MinimalScan: return "minimal_scan";
    case Family::V4: return "v4";
    }
    return "?";
}

namespace {

long double to_ld(const mpz_class& x)
{
    long e = 0;
    double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

} // namespace

bool consistent(const RootDiscriminantRecord& r)
{
    long double d = std::fabs(to_ld(r.disc));
    long double back = std::pow(r.rd, static_cast<long double>(r.degree));
    return std::fabs(back - d) <= d * std::pow(10.0L, -static_cast<long double>(r.digits));
}

MinkowskiBound minkowski_rd_bound(unsigned n, unsigned r2)
{
    require(n >= 1 && 2 * r2 <= n, ErrorCode::Precondition, "minkowski_rd_bound: need 0 <= 2 r2 <= n");
    MinkowskiBound b;
    b.n = n;
    b.r2 = r2;
    mpz_class nn, fact;
    mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
    mpz_fac_ui(fact.get_mpz_t(), n);
    b.ratio = mpq_class(nn, fact);
    b.ratio.canonicalize();
    long double x = to_ld(b.ratio.get_num()) / to_ld(b.ratio.get_den());
    x *= std::pow(std::numbers::pi_v<long double> / 4, static_cast<long double>(r2));
    b.disc_bound = x * x;
    b.rd_bound = std::pow(b.disc_bound, 1.0L / n);
    return b;
}

RootDiscriminantRecord cyclotomic_rd(u64 p)
{
    require(p > 2 && arith::is_prime(p), ErrorCode::Precondition, "cyclotomic_rd: p must be an odd prime");
    RootDiscriminantRecord r;
    r.degree = static_cast<unsigned>(p - 1);
    mpz_ui_pow_ui(r.disc.get_mpz_t(), p, p - 2);
    if ((p - 1) / 2 % 2 == 1)
        r.disc = -r.disc;
    r.rd = std::pow(static_cast<long double>(p), static_cast<long double>(p - 2) / (p - 1));
    r.family = Family::Cyclotomic;
    return r;
}

PerronRecord perron_record(unsigned n)
{
    require(n >= 2 && n <= 64, ErrorCode::BoundExceeded, "perron_record: n in 2..64");
    poly::ZPoly f(n + 1, 0);
    f[0] = -2;
    f[n] = 1;
    PerronRecord pr;
    pr.record.degree = n;
    pr.record.disc = poly::discriminant(f);
    pr.record.family = Family::Perron;
    pr.record.rd = std::pow(std::fabs(to_ld(pr.record.disc)), 1.0L / n);
    mpz_class expect, two;
    mpz_ui_pow_ui(expect.get_mpz_t(), n, n);
    mpz_ui_pow_ui(two.get_mpz_t(), 2, n - 1);
    pr.formula_holds = abs(pr.record.disc) == expect * two;
    pr.below_2n = pr.record.rd < 2.0L * n;
    return pr;
}

std::vector<PerronRecord> perron_scan(unsigned n_max)
{
    require(n_max <= 64, ErrorCode::BoundExceeded, "perron_scan: n_max <= 64");
    std::vector<PerronRecord> out;
    for (unsigned n = 2; n <= n_max; ++n)
        out.push_back(perron_record(n));
    return out;
}

std::vector<u64> wieferich_scan(u64 bound)
{
    require(bound <= 1'000'000, ErrorCode::BoundExceeded, "wieferich_scan: bound <= 10^6");
    std::vector<u64> out;
    for (u64 p : arith::primes_up_to(bound)) {
        if (p == 2)
            continue;
        if (arith::powmod(2, p - 1, p * p) == 1)
            out.push_back(p);
    }
    return out;
}

MinDiscResult minimal_disc_scan(unsigned degree, i64 limit)
{
    require(degree == 2 || degree == 3, ErrorCode::Precondition, "minimal_disc_scan: degree must be 2 or 3");
    MinDiscResult r;
    r.degree = degree;
    r.disc_limit = limit;
    if (degree == 2) {
        bool have = false, have_real = false, have_second = false;
        for (i64 a = 1; a <= std::max<i64>(limit, 8) && !(have && have_real && have_second); ++a) {
            for (i64 d : {-a, a}) {
                ++r.polynomials_tested;
                if (!quad::is_fundamental_discriminant(d))
                    continue;
                FieldWitness w{d, "Q(sqrt " + std::to_string(quad::FundamentalDiscriminant(d).radicand()) + ")", {}};
                if (!have) {
                    r.minimum = w;
                    have = true;
                }
                if (d > 0 && !have_real) {
                    r.minimum_real = w;
                    have_real = true;
                } else if (d > 0 && !have_second) {
                    r.second_real = w;
                    have_second = true;
                }
            }
        }
        return r;
    }

    // Hunter: some alpha in O_K \ Z has Tr in {0, 1} and
    // T2(alpha) <= Tr^2/3 + gamma_2 sqrt(|d|/3), gamma_2 = sqrt(4/3).
    long double t2 = 1.0L / 3 + std::sqrt(4.0L / 3) * std::sqrt(static_cast<long double>(limit) / 3);
    i64 s2max = static_cast<i64>(std::floor(t2)) + 1;
    i64 s3max = static_cast<i64>(std::floor(std::pow(t2 / 3, 1.5L))) + 1;
    std::set<i64> found;
    for (i64 s1 = -1; s1 <= 2; ++s1)
        for (i64 s2 = -s2max; s2 <= s2max; ++s2)
            for (i64 s3 = -s3max; s3 <= s3max; ++s3) {
                if (s3 == 0)
                    continue;
                poly::ZPoly f{-s3, s2, -s1, 1};
                ++r.polynomials_tested;
                if (!poly::cubic_irreducible(f))
                    continue;
                mpz_class D = poly::discriminant(f);
                mpz_class idx = poly::cubic_index(f);
                mpz_class dk = D / (idx * idx);
                if (abs(dk) > limit)
                    continue;
                i64 v = dk.get_si();
                if (found.insert(v).second && (r.minimum.disc == 0 || std::abs(v) < std::abs(r.minimum.disc))) {
                    std::string s = "x^3";
                    auto term = [&](i64 c, const char* mono) {
                        if (c == 0)
                            return;
                        s += c < 0 ? " - " : " + ";
                        if (std::abs(c) != 1 || !*mono)
                            s += std::to_string(std::abs(c));
                        s += mono;
                    };
                    term(-s1, "x^2");
                    term(s2, "x");
                    term(-s3, "");
                    r.minimum = FieldWitness{v, s, f};
                }
            }
    r.discs_found.assign(found.begin(), found.end());
    return r;
}

namespace {

// Visit every V4 field with disc <= X as (m1, m2, m3, disc): the radicands are
// +-ab, +-ac, +-bc for pairwise coprime squarefree a < b < c, or {-1, c, -c}.
template <class F>
void for_each_v4(u64 X, F&& visit)
{
    u64 S = arith::isqrt(X);
    std::vector<char> sqf(S + 1, 1);
    for (u64 p = 2; p * p <= S; ++p)
        for (u64 k = p * p; k <= S; k += p * p)
            sqf[k] = 0;
    auto dabs = [](i64 m) -> u64 {
        u64 a = static_cast<u64>(m < 0 ? -m : m);
        return arith::mod(m, 4) == 1 ? a : 4 * a;
    };
    static const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    auto emit = [&](u64 a, u64 b, u64 c, int from, int to) {
        const i64 mag[3] = {static_cast<i64>(a * b), static_cast<i64>(a * c), static_cast<i64>(b * c)};
        for (int s = from; s < to; ++s) {
            i64 m[3];
            bool ok = true;
            for (int i = 0; i < 3; ++i) {
                m[i] = signs[s][i] * mag[i];
                ok = ok && m[i] != 1;
            }
            if (!ok)
                continue;
            unsigned __int128 D = static_cast<unsigned __int128>(dabs(m[0])) * dabs(m[1]) * dabs(m[2]);
            if (D <= X)
                visit(m[0], m[1], m[2], static_cast<u64>(D));
        }
    };
    for (u64 c = 2; c <= S; ++c)
        if (sqf[c])
            emit(1, 1, c, 2, 3);
    for (u64 a = 1; a * (a + 1) * (a + 2) <= S; ++a) {
        if (!sqf[a])
            continue;
        for (u64 b = a + 1; a * b * (b + 1) <= S; ++b) {
            if (!sqf[b] || std::gcd(a, b) != 1)
                continue;
            for (u64 c = b + 1; a * b * c <= S; ++c) {
                if (!sqf[c] || std::gcd(a, c) != 1 || std::gcd(b, c) != 1)
                    continue;
                emit(a, b, c, 0, 4);
            }
        }
    }
}

} // namespace

std::vector<V4Field> v4_fields(u64 X)
{
    require(X <= 10'000'000, ErrorCode::BoundExceeded, "v4_fields: X <= 10^7");
    std::vector<V4Field> out;
    for_each_v4(X, [&](i64 m1, i64 m2, i64 m3, u64 D) {
        std::array<i64, 3> d{quad::fundamental_discriminant(m1).value(), quad::fundamental_discriminant(m2).value(),
                             quad::fundamental_discriminant(m3).value()};
        std::sort(d.begin(), d.end());
        out.push_back(V4Field{d[0], d[1], d[2], mpz_class(std::to_string(D))});
    });
    std::sort(out.begin(), out.end(), [](const V4Field& x, const V4Field& y) {
        if (x.disc != y.disc)
            return x.disc < y.disc;
        return std::tie(x.d1, x.d2) < std::tie(y.d1, y.d2);
    });
    return out;
}

u64 v4_count_only(u64 X)
{
    require(X <= 10'000'000'000ull, ErrorCode::BoundExceeded, "v4_count: X <= 10^10");
    u64 n = 0;
    for_each_v4(X, [&](i64, i64, i64, u64) { ++n; });
    return n;
}

V4Count v4_count(u64 X)
{
    require(X <= 10'000'000'000ull, ErrorCode::BoundExceeded, "v4_count: X <= 10^10");
    V4Count r;
    r.X = X;
    std::vector<u64> discs;
    for_each_v4(X, [&](i64, i64, i64, u64 D) { discs.push_back(D); });
    std::sort(discs.begin(), discs.end());
    r.count = discs.size();
    std::vector<double> lx, ly;
    for (int i = 0; i <= 12; ++i) {
        u64 xi = static_cast<u64>(std::llround(static_cast<long double>(X) * std::pow(10.0L, (i - 12) / 4.0L)));
        u64 ni = static_cast<u64>(std::upper_bound(discs.begin(), discs.end(), xi) - discs.begin());
        r.grid.emplace_back(xi, ni);
        if (ni > 0) {
            lx.push_back(std::log(static_cast<double>(xi)));
            ly.push_back(std::log(static_cast<double>(ni)));
        }
    }
    if (lx.size() >= 2) {
        double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
        double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        r.slope = sxx > 0 ? sxy / sxx : 0;
    }
    return r;
}

} // namespace scholz::discbounds
