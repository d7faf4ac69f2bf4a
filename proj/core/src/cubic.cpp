#include "scholz/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "scholz/error.hpp"

namespace scholz::cubic {

using arith::mulmod;
using arith::powmod;
using Real = boost::multiprecision::cpp_bin_float_100;

namespace {

u64 primitive_root(u64 q)
{
    auto f = arith::factor(static_cast<i64>(q - 1));
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (auto& pp : f.factors) {
            if (powmod(g, (q - 1) / pp.prime.get_ui(), q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return g;
    }
}

// high-precision periods, memoised per conductor
const std::array<Real, 3>& hp_periods(const PeriodField& K)
{
    static std::mutex mu;
    static std::map<u64, std::array<Real, 3>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(K.q);
    if (it != cache.end())
        return it->second;
    std::array<Real, 3> P{0, 0, 0};
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    u64 x = 1;
    for (u64 t = 0; t < K.q - 1; ++t) {
        P[t % 3] += cos(two_pi * Real(x) / Real(K.q));
        x = mulmod(x, K.generator, K.q);
    }
    return cache.emplace(K.q, P).first->second;
}

Real to_real(const mpz_class& z) { return Real(z.get_str()); }

mpz_class round_to_mpz(const Real& r)
{
    Real f = floor(r + Real(0.5));
    std::string s = f.str(0, std::ios_base::fixed);
    if (auto dot = s.find('.'); dot != std::string::npos)
        s.resize(dot);
    if (s == "-0")
        s = "0";
    return mpz_class(s);
}

std::array<Real, 3> hp_embeddings(const PeriodField& K, const Elem& x)
{
    const auto& P = hp_periods(K);
    std::array<Real, 3> out;
    for (int j = 0; j < 3; ++j) {
        Real v = 0;
        for (int i = 0; i < 3; ++i)
            v += to_real(x[i]) * P[(i + j) % 3];
        out[j] = v;
    }
    return out;
}

/// coordinates from conjugate values; nullopt when not within 1/100 of integers
std::optional<Elem> from_embeddings(const PeriodField& K, const std::array<Real, 3>& w)
{
    const auto& P = hp_periods(K);
    Real A[3][4];
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i)
            A[j][i] = P[(i + j) % 3];
        A[j][3] = w[j];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (abs(A[r][c]) > abs(A[piv][c]))
                piv = r;
        for (int k = 0; k < 4; ++k)
            std::swap(A[c][k], A[piv][k]);
        for (int r = 0; r < 3; ++r) {
            if (r == c)
                continue;
            Real f = A[r][c] / A[c][c];
            for (int k = c; k < 4; ++k)
                A[r][k] -= f * A[c][k];
        }
    }
    Elem out;
    for (int i = 0; i < 3; ++i) {
        Real v = A[i][3] / A[i][i];
        Real rv = floor(v + Real(0.5));
        if (abs(v - rv) > Real(0.01))
            return std::nullopt;
        out[i] = round_to_mpz(rv);
    }
    return out;
}

Elem neg(const Elem& x) { return {-x[0], -x[1], -x[2]}; }

bool canonical_sign(const Elem& x)
{
    for (auto& c : x) {
        if (c != 0)
            return c > 0;
    }
    return true;
}

std::array<long double, 2> log_vec(const PeriodField& K, const Elem& u)
{
    auto e = hp_embeddings(K, u);
    return {static_cast<long double>(log(abs(e[0]))), static_cast<long double>(log(abs(e[1])))};
}

Elem unit_power(const PeriodField& K, const Elem& u, i64 e)
{
    if (e >= 0)
        return pow(K, u, e);
    return pow(K, unit_inverse(K, u), -e);
}

Elem cyclotomic_unit(const PeriodField& K)
{
    // norm to K of sin(pi g x / q) / sin(pi x / q); conjugate j runs over the coset g^j H
    const Real pi = boost::math::constants::pi<Real>();
    std::array<Real, 3> v{1, 1, 1};
    u64 x = 1;
    for (u64 t = 0; t < K.q - 1; ++t) {
        u64 gx = mulmod(x, K.generator, K.q);
        v[t % 3] *= abs(sin(pi * Real(gx) / Real(K.q)) / sin(pi * Real(x) / Real(K.q)));
        x = gx;
    }
    // each conjugate collected both x and -x: take square roots
    for (auto& c : v)
        c = sqrt(c);
    for (int mask = 0; mask < 8; ++mask) {
        std::array<Real, 3> w = v;
        for (int j = 0; j < 3; ++j)
            if (mask & (1 << j))
                w[j] = -w[j];
        auto e = from_embeddings(K, w);
        if (!e)
            continue;
        mpz_class n = norm(K, *e);
        if (n == 1 || n == -1)
            return canonical_sign(*e) ? *e : neg(*e);
    }
    raise(ErrorCode::ConsistencyFailure, "cyclotomic unit could not be recovered exactly");
}

long double det2(const std::array<long double, 2>& a, const std::array<long double, 2>& b)
{
    return a[0] * b[1] - a[1] * b[0];
}

void compute_sigma_matrix(const PeriodField& K, CubicUnitSystem& sys)
{
    auto l0 = log_vec(K, sys.units[0]), l1 = log_vec(K, sys.units[1]);
    long double D = det2(l0, l1);
    for (int j = 0; j < 2; ++j) {
        Elem s = sigma(sys.units[j]);
        auto ls = log_vec(K, s);
        long double a = det2(ls, l1) / D, b = det2(l0, ls) / D;
        i64 ia = std::llround(a), ib = std::llround(b);
        Elem prod = mul(K, unit_power(K, sys.units[0], ia), unit_power(K, sys.units[1], ib));
        require(prod == s || neg(prod) == s, ErrorCode::ConsistencyFailure, "Galois action on units not integral");
        sys.sigma_matrix[0][j] = ia;
        sys.sigma_matrix[1][j] = ib;
    }
    // X = sigma - 1 mod 3 has rank one; pick a basis vector outside its image
    i64 x00 = arith::mod(sys.sigma_matrix[0][0] - 1, 3), x10 = arith::mod(sys.sigma_matrix[1][0], 3);
    i64 x01 = arith::mod(sys.sigma_matrix[0][1], 3), x11 = arith::mod(sys.sigma_matrix[1][1] - 1, 3);
    i64 v1 = (x00 || x10) ? x10 : x11;
    bool zero = !(x00 || x10 || x01 || x11);
    require(!zero, ErrorCode::ConsistencyFailure, "Galois action trivial on E/E^3");
    sys.generator_index = (v1 == 0) ? 1 : 0;
}

void refresh_det(const PeriodField& K, CubicUnitSystem& sys)
{
    auto l0 = log_vec(K, sys.units[0]), l1 = log_vec(K, sys.units[1]);
    sys.log_det = std::fabs(det2(l0, l1));
    long double scale = std::fabs(l0[0]) + std::fabs(l0[1]) + std::fabs(l1[0]) + std::fabs(l1[1]) + 1;
    sys.log_det_error = 1e-15L * scale * scale;
    sys.independent = sys.log_det > sys.log_det_error;
    for (int j = 0; j < 2; ++j)
        sys.norms[j] = static_cast<int>(norm(K, sys.units[j]).get_si());
}

} // namespace

PeriodField period_field(u64 q)
{
    require(arith::is_prime(q) && q % 3 == 1, ErrorCode::Precondition,
            "period_field: q must be a prime = 1 mod 3, got " + std::to_string(q));
    PeriodField K;
    K.q = q;
    for (i64 M = 1; 27 * M * M < 4 * static_cast<i64>(q); ++M) {
        i64 r = 4 * static_cast<i64>(q) - 27 * M * M;
        if (!arith::is_square(r))
            continue;
        i64 L = static_cast<i64>(arith::isqrt(static_cast<u64>(r)));
        if (arith::mod(L, 3) != 1)
            L = -L;
        K.L = L;
        K.M = M;
        break;
    }
    require(K.M > 0, ErrorCode::ConsistencyFailure, "no representation 4q = L^2 + 27M^2");
    const long qq = static_cast<long>(q);
    K.poly = {mpz_class(-((K.L + 3) * qq - 1) / 27), mpz_class(-(qq - 1) / 3), 1, 1};

    K.generator = primitive_root(q);
    std::vector<int> cls(q, -1);
    u64 x = 1;
    for (u64 t = 0; t < q - 1; ++t) {
        cls[x] = static_cast<int>(t % 3);
        x = mulmod(x, K.generator, q);
    }
    const i64 f = static_cast<i64>((q - 1) / 3);
    for (int i = 0; i < 3; ++i) {
        u64 x0 = powmod(K.generator, i, q);
        for (int j = 0; j < 3; ++j) {
            std::array<i64, 3> N{0, 0, 0};
            for (u64 y = 1; y < q; ++y) {
                if (cls[y] != j)
                    continue;
                u64 z = (x0 + y) % q;
                if (z != 0)
                    ++N[cls[z]];
            }
            for (int k = 0; k < 3; ++k)
                K.table[i][j][k] = N[k] - (i == j ? f : 0);
        }
    }
    // characteristic polynomial of multiplication by eta_0 must equal the closed form
    i64 T[3][3];
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            T[k][j] = K.table[0][j][k];
    i64 tr = T[0][0] + T[1][1] + T[2][2];
    i64 minors = T[0][0] * T[1][1] - T[0][1] * T[1][0] + T[0][0] * T[2][2] - T[0][2] * T[2][0] +
                 T[1][1] * T[2][2] - T[1][2] * T[2][1];
    i64 det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
              T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
    poly::ZPoly charpoly{mpz_class(-det), mpz_class(minors), mpz_class(-tr), 1};
    require(charpoly == K.poly, ErrorCode::ConsistencyFailure, "period polynomial disagrees with the period table");

    K.disc = poly::discriminant(K.poly);
    K.index = K.M;
    K.disc_check = (K.disc == mpz_class(qq) * qq * K.M * K.M);

    const auto& P = hp_periods(K);
    for (int i = 0; i < 3; ++i)
        K.periods[i] = static_cast<long double>(P[i]);
    return K;
}

Elem one() { return {-1, -1, -1}; }

Elem from_int(i64 c) { return {mpz_class(-c), mpz_class(-c), mpz_class(-c)}; }

Elem mul(const PeriodField& K, const Elem& x, const Elem& y)
{
    Elem r{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        if (x[i] == 0)
            continue;
        for (int j = 0; j < 3; ++j) {
            if (y[j] == 0)
                continue;
            mpz_class c = x[i] * y[j];
            for (int k = 0; k < 3; ++k) {
                if (K.table[i][j][k] != 0)
                    r[k] += c * static_cast<long>(K.table[i][j][k]);
            }
        }
    }
    return r;
}

Elem from_theta(const PeriodField& K, i64 a, i64 b, i64 c)
{
    Elem theta{1, 0, 0};
    Elem t2 = mul(K, theta, theta);
    Elem r = from_int(a);
    for (int i = 0; i < 3; ++i)
        r[i] += b * theta[i] + c * t2[i];
    return r;
}

Elem pow(const PeriodField& K, Elem x, i64 e)
{
    require(e >= 0, ErrorCode::Precondition, "negative exponent");
    Elem r = one();
    while (e) {
        if (e & 1)
            r = mul(K, r, x);
        e >>= 1;
        if (e)
            x = mul(K, x, x);
    }
    return r;
}

Elem sigma(const Elem& x) { return {x[2], x[0], x[1]}; }

mpz_class norm(const PeriodField& K, const Elem& x)
{
    Elem s1 = sigma(x);
    Elem s2 = sigma(s1);
    Elem n = mul(K, mul(K, x, s1), s2);
    require(n[0] == n[1] && n[1] == n[2], ErrorCode::ConsistencyFailure, "norm is not rational");
    return -n[0];
}

Elem unit_inverse(const PeriodField& K, const Elem& u)
{
    mpz_class n = norm(K, u);
    require(n == 1 || n == -1, ErrorCode::Precondition, "unit_inverse: not a unit");
    Elem r = mul(K, sigma(u), sigma(sigma(u)));
    return n == 1 ? r : neg(r);
}

bool is_torsion(const Elem& x)
{
    return x[0] == x[1] && x[1] == x[2] && (x[0] == 1 || x[0] == -1);
}

std::string to_string(const Elem& x)
{
    return "[" + x[0].get_str() + "," + x[1].get_str() + "," + x[2].get_str() + "]";
}

std::array<long double, 3> embeddings(const PeriodField& K, const Elem& x)
{
    auto e = hp_embeddings(K, x);
    return {static_cast<long double>(e[0]), static_cast<long double>(e[1]), static_cast<long double>(e[2])};
}

std::optional<Elem> kth_root(const PeriodField& K, const Elem& x, unsigned k)
{
    require(k % 2 == 1, ErrorCode::Precondition, "kth_root: k must be odd");
    auto e = hp_embeddings(K, x);
    std::array<Real, 3> w;
    for (int j = 0; j < 3; ++j) {
        if (e[j] == 0)
            return std::nullopt;
        Real a = exp(log(abs(e[j])) / Real(k));
        w[j] = e[j] < 0 ? Real(-a) : a;
    }
    auto r = from_embeddings(K, w);
    if (!r || pow(K, *r, k) != x)
        return std::nullopt;
    return r;
}

bool saturate(const PeriodField& K, CubicUnitSystem& sys, unsigned k)
{
    for (int round = 0; round < 64; ++round) {
        bool replaced = false;
        std::vector<std::pair<i64, i64>> combos{{1, 0}};
        for (i64 a = 0; a < static_cast<i64>(k); ++a)
            combos.emplace_back(a, 1);
        for (auto [a, b] : combos) {
            Elem x = mul(K, unit_power(K, sys.units[0], a), unit_power(K, sys.units[1], b));
            if (auto r = kth_root(K, x, k)) {
                if (b == 0)
                    sys.units[0] = *r;
                else
                    sys.units[1] = *r;
                replaced = true;
                break;
            }
        }
        if (!replaced) {
            refresh_det(K, sys);
            return true;
        }
    }
    refresh_det(K, sys);
    return false;
}

CubicUnitSystem unit_search(const PeriodField& K, i64 B)
{
    require(B >= 1, ErrorCode::Precondition, "unit_search: height bound must be >= 1");
    CubicUnitSystem sys;
    sys.q = K.q;
    sys.height_bound = B;
    const long double P0 = K.periods[0], P1 = K.periods[1], P2 = K.periods[2];

    std::vector<Elem> found;
    for (i64 a = -B; a <= B; ++a) {
        for (i64 b = -B; b <= B; ++b) {
            for (i64 c = -B; c <= B; ++c) {
                if (a < 0 || (a == 0 && (b < 0 || (b == 0 && c <= 0))))
                    continue; // one of +-x
                long double v0 = a * P0 + b * P1 + c * P2;
                long double v1 = a * P1 + b * P2 + c * P0;
                long double v2 = a * P2 + b * P0 + c * P1;
                long double pr = std::fabs(v0 * v1 * v2);
                if (std::fabs(pr - 1) > 1e-6L)
                    continue;
                Elem x{a, b, c};
                if (is_torsion(x))
                    continue;
                mpz_class n = norm(K, x);
                if (n == 1 || n == -1)
                    found.push_back(x);
            }
        }
    }
    sys.box_units_found = found.size();

    Elem c = cyclotomic_unit(K);
    std::vector<Elem> cand = found;
    cand.push_back(c);
    cand.push_back(sigma(c));

    std::vector<std::array<long double, 2>> logs;
    for (auto& u : cand)
        logs.push_back(log_vec(K, u));
    // keep the smallest few hundred by log height
    std::vector<std::size_t> order(cand.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto height = [&](std::size_t i) {
        long double l2 = -logs[i][0] - logs[i][1];
        return std::fabs(logs[i][0]) + std::fabs(logs[i][1]) + std::fabs(l2);
    };
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return height(x) < height(y); });
    if (order.size() > 600)
        order.resize(600);

    long double best = 0;
    std::pair<std::size_t, std::size_t> bp{SIZE_MAX, SIZE_MAX};
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
        for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
            std::size_t i = order[ii], j = order[jj];
            long double dd = std::fabs(det2(logs[i], logs[j]));
            if (dd < 1e-9L)
                continue;
            if (bp.first == SIZE_MAX || dd < best - 1e-12L) {
                best = dd;
                bp = {i, j};
            }
        }
    }
    require(bp.first != SIZE_MAX, ErrorCode::InsufficientUnits, "fewer than two independent units found");
    sys.units = {cand[bp.first], cand[bp.second]};
    refresh_det(K, sys);
    sys.saturated_at_3 = saturate(K, sys, 3);
    compute_sigma_matrix(K, sys);
    return sys;
}

const Elem& generator_unit(const CubicUnitSystem& sys) { return sys.units[sys.generator_index]; }

namespace {

std::vector<std::array<u64, 3>> homomorphisms(const PeriodField& K, u64 p)
{
    auto roots = poly::roots_mod_p(K.poly, p);
    std::vector<std::array<u64, 3>> out;
    auto tab = [&](int i, int j, int k) {
        return static_cast<u64>(arith::mod(K.table[i][j][k], static_cast<i64>(p)));
    };
    for (u64 a : roots)
        for (u64 b : roots)
            for (u64 c : roots) {
                std::array<u64, 3> r{a, b, c};
                if ((a + b + c + 1) % p != 0)
                    continue;
                bool ok = true;
                for (int i = 0; i < 3 && ok; ++i)
                    for (int j = i; j < 3 && ok; ++j) {
                        u64 rhs = 0;
                        for (int k = 0; k < 3; ++k)
                            rhs = (rhs + mulmod(tab(i, j, k), r[k], p)) % p;
                        ok = mulmod(r[i], r[j], p) == rhs;
                    }
                if (ok)
                    out.push_back(r);
            }
    std::sort(out.begin(), out.end());
    return out;
}

u64 residue(const mpz_class& v, u64 p)
{
    mpz_class r = v % static_cast<unsigned long>(p);
    if (r < 0)
        r += static_cast<unsigned long>(p);
    return r.get_ui();
}

} // namespace

bool splits_completely(const PeriodField& K, u64 p)
{
    if (p == K.q)
        return false;
    return homomorphisms(K, p).size() == 3;
}

SplitPrime split_prime(const PeriodField& K, u64 p)
{
    require(arith::is_prime(p), ErrorCode::NotPrime, "split_prime: p must be prime");
    require(p != K.q, ErrorCode::Precondition, "split_prime: p equals the conductor");
    auto homs = homomorphisms(K, p);
    require(homs.size() == 3, ErrorCode::NotSplit,
            std::to_string(p) + " does not split completely in the cubic field of conductor " + std::to_string(K.q));
    return SplitPrime{p, homs.front()};
}

u64 reduce(const PeriodField& K, const Elem& x, const SplitPrime& P, unsigned k)
{
    (void)K;
    u64 v = 0;
    for (int i = 0; i < 3; ++i)
        v = (v + mulmod(residue(x[i], P.p), P.r[(i + k) % 3], P.p)) % P.p;
    return v;
}

std::array<unsigned, 3> cubic_characters(const PeriodField& K, const Elem& alpha, u64 p)
{
    require(arith::is_prime(p), ErrorCode::NotPrime, "cubic_characters: p must be prime");
    require(p % 3 == 1, ErrorCode::Precondition, "cubic_characters: p must be 1 mod 3");
    require(p != K.q, ErrorCode::Precondition, "cubic_characters: p equals the conductor");
    SplitPrime P = split_prime(K, p);
    u64 w = 0;
    for (u64 c = 2;; ++c) {
        u64 t = powmod(c, (p - 1) / 3, p);
        if (t != 1) {
            w = std::min(t, mulmod(t, t, p));
            break;
        }
    }
    u64 w2 = mulmod(w, w, p);
    std::array<unsigned, 3> e{};
    for (unsigned k = 0; k < 3; ++k) {
        u64 v = reduce(K, alpha, P, k);
        require(v != 0, ErrorCode::Degenerate, "alpha vanishes at a prime above " + std::to_string(p));
        u64 t = powmod(v, (p - 1) / 3, p);
        if (t == 1)
            e[k] = 0;
        else if (t == w)
            e[k] = 1;
        else if (t == w2)
            e[k] = 2;
        else
            raise(ErrorCode::ConsistencyFailure, "cubic character outside mu_3");
    }
    return e;
}

unsigned level_from_characters(const std::array<unsigned, 3>& e)
{
    if (e[0] == 0 && e[1] == 0 && e[2] == 0)
        return 4;
    if (e[0] == e[1] && e[1] == e[2])
        return 3;
    if (e[0] != e[1] && e[1] != e[2] && e[0] != e[2])
        return 2;
    return 1;
}

SymbolicClass symbolic_class(const PeriodField& K, const Elem& eps, u64 p)
{
    mpz_class n = norm(K, eps);
    require(n == 1 || n == -1, ErrorCode::Precondition, "symbolic_class: argument is not a unit");
    SymbolicClass s;
    Elem e = eps;
    if (n == -1) {
        e = mul(K, eps, eps);
        s.squared = true;
    }
    s.characters = cubic_characters(K, e, p);
    s.level = level_from_characters(s.characters);
    require(s.level != 1, ErrorCode::ConsistencyFailure, "mixed character pattern for a norm-one unit");
    return s;
}

bool is_cubic_residue(u64 p, u64 q)
{
    return p % q != 0 && powmod(p % q, (q - 1) / 3, q) == 1;
}

L3Report l3_reciprocity_check(const PeriodField& Kp, const CubicUnitSystem& Up, const PeriodField& Kq,
                              const CubicUnitSystem& Uq)
{
    u64 p = Kp.q, q = Kq.q;
    require(p != q, ErrorCode::Precondition, "l3_reciprocity_check: p == q");
    require(Up.q == p && Uq.q == q, ErrorCode::Precondition, "unit systems do not match the fields");
    require(splits_completely(Kq, p) && splits_completely(Kp, q), ErrorCode::NotSplit,
            "p and q do not split completely in each other's cubic fields");
    require(Up.saturated_at_3 && Uq.saturated_at_3, ErrorCode::NotSaturated, "unit system not 3-saturated");
    L3Report r;
    r.p = p;
    r.q = q;
    r.class_pq = symbolic_class(Kp, generator_unit(Up), q);
    r.class_qp = symbolic_class(Kq, generator_unit(Uq), p);
    r.biconditional_holds = (r.class_pq.level >= 3) == (r.class_qp.level >= 3);
    return r;
}

L3Report l3_reciprocity_check(u64 p, u64 q, i64 height_bound)
{
    require(arith::is_prime(p) && arith::is_prime(q), ErrorCode::NotPrime, "p and q must be prime");
    require(p % 3 == 1 && q % 3 == 1, ErrorCode::Precondition, "p and q must be 1 mod 3");
    require(p != q, ErrorCode::Precondition, "l3_reciprocity_check: p == q");
    require(is_cubic_residue(p, q) && is_cubic_residue(q, p), ErrorCode::NotSplit,
            "p and q do not split completely in each other's cubic fields");
    auto Kp = period_field(p), Kq = period_field(q);
    auto Up = unit_search(Kp, height_bound), Uq = unit_search(Kq, height_bound);
    return l3_reciprocity_check(Kp, Up, Kq, Uq);
}

} // namespace scholz::cubic
