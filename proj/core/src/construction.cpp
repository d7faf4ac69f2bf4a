#include "scholz/construction.hpp"

#include <cmath>
#include <sstream>

#include "scholz/cubic.hpp"
#include "scholz/error.hpp"
#include "scholz/quadratic.hpp"
#include "scholz/symbols.hpp"
#include "scholz/ell2.hpp"

namespace scholz::construct {

using namespace scholz::arith;

std::string to_string(TargetGroup g)
{
    switch (g) {
    case TargetGroup::D4ViaC4: return "D4_via_C4";
    case TargetGroup::D4ViaC2WrC2: return "D4_via_C2wrC2";
    case TargetGroup::PqMetacyclic: return "pq_metacyclic";
    case TargetGroup::UnramifiedCubic: return "unramified_cubic";
    }
    return "?";
}

namespace {

std::string esc(const std::string& s)
{
    std::string o;
    for (char c : s) {
        switch (c) {
        case '"': o += "\\\""; break;
        case '\\': o += "\\\\"; break;
        case '\n': o += "\\n"; break;
        default: o += c;
        }
    }
    return o;
}

void finish(ConstructionCertificate& c)
{
    c.complete = !c.conditions.empty();
    for (auto& k : c.conditions)
        c.complete = c.complete && k.holds;
}

std::string s(const mpz_class& x) { return x.get_str(); }
template <class T>
std::string s(T x) { return std::to_string(x); }

} // namespace

std::string to_json(const ConstructionCertificate& c)
{
    std::ostringstream o;
    o << "{\"schema\":1,\"target\":\"" << to_string(c.target) << "\",\"base_data\":{";
    for (std::size_t i = 0; i < c.base_data.size(); ++i)
        o << (i ? "," : "") << '"' << esc(c.base_data[i].first) << "\":\"" << esc(c.base_data[i].second) << '"';
    o << "},\"conditions\":[";
    for (std::size_t i = 0; i < c.conditions.size(); ++i) {
        auto& k = c.conditions[i];
        o << (i ? "," : "") << "{\"name\":\"" << esc(k.name) << "\",\"holds\":" << (k.holds ? "true" : "false")
          << ",\"witness\":\"" << esc(k.witness) << "\"}";
    }
    o << "],\"complete\":" << (c.complete ? "true" : "false") << ",\"alternatives\":[";
    for (std::size_t i = 0; i < c.alternatives.size(); ++i)
        o << (i ? "," : "") << to_json(c.alternatives[i]);
    o << "]}";
    return o.str();
}

// ---------------------------------------------------------------- d4

ConstructionCertificate d4_plan(u64 p, u64 search_bound)
{
    require(is_prime(p), ErrorCode::NotPrime, "d4_plan: p must be prime");
    require(p % 4 == 1, ErrorCode::Precondition, "d4_plan: p must be 1 mod 4");

    auto fd = quad::fundamental_discriminant(static_cast<i64>(p));
    auto eps = quad::fundamental_unit(fd);
    u64 q = 0;
    for (u64 c = 5; c <= search_bound; c += 4) {
        if (c == p || !is_prime(c) || jacobi(static_cast<i64>(p), c) != 1)
            continue;
        if (symbols::unit_character(p, c).is_plus()) {
            q = c;
            break;
        }
    }
    if (q == 0)
        raise(ErrorCode::BoundExceeded, "d4_plan: no prime q below " + std::to_string(search_bound));

    u64 r = sqrt_mod_prime(static_cast<i64>(p), q);
    mpz_class img = (eps.t + eps.u * r) % q;
    if (img < 0) img += q;
    img = img * invmod(2, q) % q;

    auto wide = ell2::ray_class_number(fd, q, ell2::WhichIdeal::First, false);
    auto narrow = ell2::ray_class_number(fd, q, ell2::WhichIdeal::First, true);
    u64 h = quad::class_number(fd);

    ConstructionCertificate c;
    c.target = TargetGroup::D4ViaC4;
    c.base_data = {{"p", s(p)},
                   {"d", s(fd.value())},
                   {"q", s(q)},
                   {"eps_p", "(" + s(eps.t) + " + " + s(eps.u) + " sqrt " + s(fd.value()) + ")/2"},
                   {"sqrt_p_mod_q", s(r)},
                   {"eps_p_mod_q", s(img)},
                   {"class_number", s(h)},
                   {"ray_class_number_wide", s(wide.value)},
                   {"ray_class_number_narrow", s(narrow.value)}};
    c.conditions = {
        {"q_congruent_1_mod_4", q % 4 == 1, "q mod 4 = " + s(q % 4)},
        {"legendre_p_q", jacobi(static_cast<i64>(p), q) == 1, "(p/q) = " + s(jacobi(static_cast<i64>(p), q))},
        {"unit_character", true, "(eps_p/q) = +1, eps_p = " + s(img) + " mod q"},
        {"ray_class_number_divisible_by_4", narrow.value % 4 == 0,
         "h(q1) = " + s(narrow.value) + " (narrow), " + s(wide.value) + " (wide)"},
    };
    finish(c);

    ConstructionCertificate alt;
    alt.target = TargetGroup::D4ViaC2WrC2;
    alt.base_data = {{"p", s(p)}, {"d", s(fd.value())}, {"q", s(q)}, {"class_number", s(h)}};
    bool sq_m1 = q % 4 == 1;
    alt.conditions = {
        {"class_number_odd", h % 2 == 1, "h = " + s(h)},
        {"prime_2_primary", sq_m1 && jacobi(img, mpz_class(q)) == 1,
         "(-1/q) = " + s(sq_m1 ? 1 : -1) + ", (eps_p/q) = " + s(jacobi(img, mpz_class(q)))},
    };
    finish(alt);
    c.alternatives.push_back(std::move(alt));
    return c;
}

// ---------------------------------------------------------------- pq

namespace {

ConstructionCertificate pq_quadratic(u64 q, u64 search_bound)
{
    u64 ell = 5;
    u64 h = 0;
    for (;; ell += 4) {
        if (!is_prime(ell) || ell == q)
            continue;
        h = quad::class_number(quad::fundamental_discriminant(static_cast<i64>(ell)));
        if (h % q != 0)
            break;
    }
    auto fd = quad::fundamental_discriminant(static_cast<i64>(ell));
    auto eps = quad::fundamental_unit(fd);

    for (u64 r = 2 * q + 1; r <= search_bound; r += 2 * q) {
        if (r == ell || !is_prime(r) || jacobi(static_cast<i64>(ell), r) != 1)
            continue;
        u64 sq = sqrt_mod_prime(static_cast<i64>(ell), r);
        u64 e = (r - 1) / q;
        std::array<u64, 2> img{}, chi{};
        for (int k = 0; k < 2; ++k) {
            mpz_class v = (eps.t + eps.u * (k ? r - sq : sq)) % r;
            if (v < 0) v += r;
            v = v * invmod(2, r) % r;
            img[k] = v.get_ui();
            chi[k] = powmod(img[k], e, r);
        }
        u64 chi_m1 = powmod(r - 1, e, r);
        if (chi[0] != 1 || chi[1] != 1 || chi_m1 != 1)
            continue;
        ConstructionCertificate c;
        c.target = TargetGroup::PqMetacyclic;
        c.base_data = {{"p", "2"},
                       {"q", s(q)},
                       {"ell", s(ell)},
                       {"base_field", "Q(sqrt " + s(ell) + ")"},
                       {"class_number", s(h)},
                       {"eps_ell", "(" + s(eps.t) + " + " + s(eps.u) + " sqrt " + s(fd.value()) + ")/2"},
                       {"r", s(r)},
                       {"sqrt_ell_mod_r", s(sq)}};
        c.conditions = {
            {"base_class_number_coprime_to_q", true, "h = " + s(h)},
            {"r_congruent_1_mod_q", r % q == 1, "r mod q = " + s(r % q)},
            {"r_splits_completely", true, "(ell/r) = +1"},
            {"units_qth_power_residues", true,
             "chi(-1) = " + s(chi_m1) + ", chi(eps) = " + s(chi[0]) + "," + s(chi[1]) + " (images " + s(img[0]) +
                 "," + s(img[1]) + ")"},
        };
        finish(c);
        return c;
    }
    raise(ErrorCode::BoundExceeded, "pq_plan: no prime r below " + std::to_string(search_bound));
}

// h = 1 when every prime up to the Minkowski bound 2 ell / 9 is inert.
bool cubic_class_number_one(u64 ell)
{
    for (u64 a : primes_up_to(2 * ell / 9))
        if (cubic::is_cubic_residue(a, ell))
            return false;
    return true;
}

ConstructionCertificate pq_cubic(u64 q, u64 search_bound, i64 height)
{
    u64 ell = 7;
    for (;; ell += 6)
        if (is_prime(ell) && ell != q && cubic_class_number_one(ell))
            break;
    auto K = cubic::period_field(ell);
    auto sys = cubic::unit_search(K, height);
    bool sat = cubic::saturate(K, sys, static_cast<unsigned>(q));
    if (!sat)
        raise(ErrorCode::NotSaturated, "pq_plan: unit system not certified " + std::to_string(q) + "-saturated");

    for (u64 r = 2 * q + 1; r <= search_bound; r += 2 * q) {
        if (r == ell || !is_prime(r) || !cubic::splits_completely(K, r))
            continue;
        auto P = cubic::split_prime(K, r);
        u64 e = (r - 1) / q;
        bool ok = true;
        std::string chis;
        for (int j = 0; j < 2 && ok; ++j)
            for (unsigned k = 0; k < 3 && ok; ++k) {
                u64 v = cubic::reduce(K, sys.units[j], P, k);
                u64 x = powmod(v, e, r);
                ok = (x == 1);
                chis += (chis.empty() ? "" : ",") + s(x);
            }
        if (!ok)
            continue;
        ConstructionCertificate c;
        c.target = TargetGroup::PqMetacyclic;
        c.base_data = {{"p", "3"},
                       {"q", s(q)},
                       {"ell", s(ell)},
                       {"base_field", "cubic subfield of Q(zeta_" + s(ell) + ")"},
                       {"class_number", "1"},
                       {"unit_1", cubic::to_string(sys.units[0])},
                       {"unit_2", cubic::to_string(sys.units[1])},
                       {"r", s(r)},
                       {"prime_images", s(P.r[0]) + "," + s(P.r[1]) + "," + s(P.r[2])}};
        c.conditions = {
            {"base_class_number_coprime_to_q", true, "all primes <= " + s(2 * ell / 9) + " inert, h = 1"},
            {"units_q_saturated", sat, "no " + s(q) + "-th root among unit combinations"},
            {"r_congruent_1_mod_q", r % q == 1, "r mod q = " + s(r % q)},
            {"r_splits_completely", true, "r is a cube mod ell"},
            {"units_qth_power_residues", true, "chi(-1) = 1, chi(units) = " + chis},
        };
        finish(c);
        return c;
    }
    raise(ErrorCode::BoundExceeded, "pq_plan: no prime r below " + std::to_string(search_bound));
}

} // namespace

ConstructionCertificate pq_plan(u64 p, u64 q, u64 search_bound, i64 unit_height_bound)
{
    require(p == 2 || p == 3, ErrorCode::Precondition, "pq_plan: p outside supported set {2, 3}");
    require(is_prime(q), ErrorCode::NotPrime, "pq_plan: q must be prime");
    require(q != p && q % p == 1, ErrorCode::Precondition, "pq_plan: q must be 1 mod p");
    return p == 2 ? pq_quadratic(q, search_bound) : pq_cubic(q, search_bound, unit_height_bound);
}

// ---------------------------------------------------------------- cubic from unit

namespace {

unsigned v3(mpz_class x)
{
    unsigned v = 0;
    if (x == 0)
        return 0;
    while (x % 3 == 0) {
        x /= 3;
        ++v;
    }
    return v;
}

} // namespace

CubicFromUnit cubic_from_unit(i64 m)
{
    require(m >= 1 && is_squarefree(m), ErrorCode::Precondition, "cubic_from_unit: m must be positive squarefree");
    require(m % 3 != 0, ErrorCode::Precondition, "cubic_from_unit: 3 divides m");
    auto fd = quad::fundamental_discriminant(3 * m);
    auto eps = quad::fundamental_unit(fd);
    if (eps.norm != 1)
        raise(ErrorCode::Inapplicable, "cubic_from_unit: fundamental unit of Q(sqrt " + std::to_string(3 * m) +
                                           ") has norm -1");
    CubicFromUnit r;
    r.m = m;
    r.d = fd.value();
    r.t = eps.t;
    r.u = eps.u;
    r.poly = {-eps.t, -3, 0, 1};
    r.disc = poly::discriminant(r.poly);
    r.irreducible = poly::cubic_irreducible(r.poly);
    if (!r.irreducible)
        raise(ErrorCode::Degenerate, "cubic_from_unit: x^3 - 3x - " + eps.t.get_str() + " is reducible");
    r.disc_factorization = factor(r.disc);
    r.fd_minus_m = quad::fundamental_discriminant(-m).value();
    mpz_class quo = r.disc / r.fd_minus_m;
    r.square_cofactor = (r.disc % r.fd_minus_m == 0) && quo > 0 && is_square(quo);
    if (r.square_cofactor)
        r.cofactor = sqrt(quo);
    r.index_v3 = poly::cubic_index_valuation(r.poly, 3);
    r.cofactor_v3 = v3(r.cofactor);
    r.unramified_claim = r.irreducible && r.square_cofactor && r.index_v3 == r.cofactor_v3;

    mpz_class c = 27 * mpz_class(m) - 1, a;
    mpz_root(a.get_mpz_t(), c.get_mpz_t(), 3);
    if (a * a * a == c) {
        r.companion_a = a.get_si();
        // -4a^3 - 27 b^2 with b^2 = -4m
        r.companion_disc = -4 * a * a * a - 27 * (-4 * mpz_class(m));
    }

    std::ostringstream fac;
    fac << (r.disc < 0 ? "-1" : "1");
    for (auto& f : r.disc_factorization.factors)
        fac << " * " << f.prime.get_str() << (f.exponent > 1 ? "^" + std::to_string(f.exponent) : "");

    auto& cert = r.certificate;
    cert.target = TargetGroup::UnramifiedCubic;
    cert.base_data = {{"m", s(m)},
                      {"d", s(r.d)},
                      {"eps", "(" + s(eps.t) + " + " + s(eps.u) + " sqrt " + s(r.d) + ")/2"},
                      {"poly", "x^3 - 3x - " + s(eps.t)},
                      {"disc", s(r.disc)},
                      {"disc_factorization", fac.str()},
                      {"fd_minus_m", s(r.fd_minus_m)}};
    if (r.companion_a)
        cert.base_data.emplace_back("companion_a", s(*r.companion_a));
    cert.conditions = {
        {"unit_norm_plus_1", true, "N eps = +1"},
        {"irreducible", r.irreducible, "no rational root"},
        {"disc_over_fd_square", r.square_cofactor, "disc / " + s(r.fd_minus_m) + " = " + s(quo)},
        {"index_3_part", r.index_v3 == r.cofactor_v3,
         "v3(index) = " + s(r.index_v3) + ", v3(f0) = " + s(r.cofactor_v3)},
    };
    finish(cert);
    return r;
}

} // namespace scholz::construct
