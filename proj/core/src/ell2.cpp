#include "scholz/ell2.hpp"

#include <cmath>
#include <numeric>

#include "scholz/symbols.hpp"

namespace scholz::ell2 {

using namespace arith;
using quad::FundamentalDiscriminant;
using quad::Form;

namespace {

void require_pair(u64 p, u64 q)
{
    require(is_prime(p) && is_prime(q), ErrorCode::NotPrime, "p and q must be prime");
    require(p != q, ErrorCode::Precondition, "p and q must differ");
    require(p % 4 == 1, ErrorCode::Precondition, "p must be 1 mod 4");
    require(q % 4 == 1, ErrorCode::Precondition, "q must be 1 mod 4");
}

u64 residue_of(const mpz_class& v, u64 p)
{
    mpz_class r = v % static_cast<unsigned long>(p);
    if (r < 0)
        r += static_cast<unsigned long>(p);
    return r.get_ui();
}

/// image of sqrt(d) in Z/p for the chosen root r of r^2 = radicand
u64 sqrt_d_image(i64 d, u64 r, u64 p) { return d % 4 == 0 ? (2 * r) % p : r % p; }

/// (x + y sqrt d)/2 mod p
u64 element_mod(const QuadElement& e, u64 sd, u64 p)
{
    u64 v = (residue_of(e.x, p) + mulmod(residue_of(e.y, p), sd, p)) % p;
    return p == 2 ? v : mulmod(v, invmod(2, p), p);
}

GroupLabel two_part_label(const std::vector<u64>& two_parts)
{
    if (two_parts.size() != 1)
        return GroupLabel::Other;
    if (two_parts[0] == 2)
        return GroupLabel::C2;
    if (two_parts[0] == 4)
        return GroupLabel::C4;
    return GroupLabel::Cyclic8Divides;
}

std::vector<u64> two_parts(const std::vector<u64>& divisors)
{
    std::vector<u64> out;
    for (u64 n : divisors) {
        u64 t = n & (~n + 1);
        if (t > 1)
            out.push_back(t);
    }
    return out;
}

} // namespace

std::string to_string(PellCase c)
{
    switch (c) {
    case PellCase::One: return "1";
    case PellCase::Two: return "2";
    case PellCase::Three: return "3";
    case PellCase::Cyclic8Plus: return "cyclic8plus";
    }
    return "?";
}

std::string to_string(GroupLabel g)
{
    switch (g) {
    case GroupLabel::C2: return "C2";
    case GroupLabel::C4: return "C4";
    case GroupLabel::Cyclic8Divides: return "cyclic_8_divides";
    case GroupLabel::Unspecified: return "unspecified";
    case GroupLabel::Other: return "other";
    }
    return "?";
}

ReciprocityReport scholz_reciprocity_check(u64 p, u64 q)
{
    require_pair(p, q);
    require(jacobi(static_cast<i64>(p), q) == 1, ErrorCode::Nonresidue, "(p/q) must be +1");
    ReciprocityReport r;
    r.p = p;
    r.q = q;
    r.lhs = symbols::unit_character(p, q);
    r.lhs_swapped = symbols::unit_character(q, p);
    r.rhs = symbols::quartic_symbol(static_cast<i64>(p), q) * symbols::quartic_symbol(static_cast<i64>(q), p);
    r.equal = (r.lhs == r.rhs) && (r.lhs_swapped == r.rhs);
    return r;
}

PellClassification negative_pell_classify(u64 p, u64 q)
{
    require_pair(p, q);
    PellClassification c;
    c.p = p;
    c.q = q;
    c.legendre = jacobi(static_cast<i64>(p), q);
    if (c.legendre == -1) {
        c.pell_case = PellCase::One;
        c.predicted_norm = -1;
        c.predicted_cl2 = GroupLabel::C2;
        c.predicted_cl2_plus = GroupLabel::C2;
        return c;
    }
    c.quartic_pq = symbols::quartic_symbol(static_cast<i64>(p), q);
    c.quartic_qp = symbols::quartic_symbol(static_cast<i64>(q), p);
    if (*c.quartic_pq != *c.quartic_qp) {
        c.pell_case = PellCase::Two;
        c.predicted_norm = 1;
        c.predicted_cl2 = GroupLabel::C2;
        c.predicted_cl2_plus = GroupLabel::C4;
    } else if (c.quartic_pq->is_minus()) {
        c.pell_case = PellCase::Three;
        c.predicted_norm = -1;
        c.predicted_cl2 = GroupLabel::C4;
        c.predicted_cl2_plus = GroupLabel::C4;
    } else {
        c.pell_case = PellCase::Cyclic8Plus;
        c.predicted_cl2 = GroupLabel::Unspecified;
        c.predicted_cl2_plus = GroupLabel::Cyclic8Divides;
    }
    return c;
}

PellGroundTruth pell_ground_truth(u64 p, u64 q, i64 bound)
{
    require_pair(p, q);
    FundamentalDiscriminant d(static_cast<i64>(p * q));
    PellGroundTruth t;
    t.norm = quad::fundamental_unit(d).norm;
    auto wide = quad::class_group(d, false, bound);
    auto narrow = quad::class_group(d, true, bound);
    t.cl2 = two_parts(wide.elementary_divisors);
    t.cl2_plus = two_parts(narrow.elementary_divisors);
    t.cl2_label = two_part_label(t.cl2);
    t.cl2_plus_label = two_part_label(t.cl2_plus);
    return t;
}

std::optional<std::string> pell_mismatch(const PellClassification& c, const PellGroundTruth& t)
{
    if (c.predicted_norm && *c.predicted_norm != t.norm)
        return "norm predicted " + std::to_string(*c.predicted_norm) + " observed " + std::to_string(t.norm);
    if (c.predicted_cl2 != GroupLabel::Unspecified && c.predicted_cl2 != t.cl2_label)
        return "Cl2 predicted " + to_string(c.predicted_cl2) + " observed " + to_string(t.cl2_label);
    if (c.predicted_cl2_plus != t.cl2_plus_label)
        return "Cl2+ predicted " + to_string(c.predicted_cl2_plus) + " observed " + to_string(t.cl2_plus_label);
    return std::nullopt;
}

KnotReport knot_report(u64 p, u64 q)
{
    require_pair(p, q);
    KnotReport k;
    k.p = p;
    k.q = q;
    int leg = jacobi(static_cast<i64>(p), q);
    k.redei = (leg == 1);
    if (leg == 1) {
        Sign prod = symbols::quartic_symbol(static_cast<i64>(p), q) * symbols::quartic_symbol(static_cast<i64>(q), p);
        k.unit_knot_order = prod.is_minus() ? 2 : 1;
        k.unit_knot_reason = prod.is_minus() ? "quartic product -1" : "quartic product +1";
    } else {
        k.unit_knot_order = 1;
        k.unit_knot_reason = "(p/q) = -1: quartic symbols undefined";
    }
    k.number_knot_nontrivial = k.redei;
    k.number_knot_order = k.redei ? 2 : 1;
    k.ideal_knot_order = k.number_knot_order / k.unit_knot_order;
    return k;
}

i64 reflection_partner(i64 m)
{
    require(m != 0 && m != 1 && is_squarefree(m), ErrorCode::Precondition, "m must be squarefree, not 0 or 1");
    return (m % 3 == 0) ? -(m / 3) : -3 * m;
}

ReflectionReport reflection_check(i64 m, i64 bound)
{
    ReflectionReport r;
    r.m = m;
    r.partner = reflection_partner(m);
    require(m != 3 && m != -3, ErrorCode::Inapplicable,
            "m = " + std::to_string(m) + " pairs with Q(sqrt " + std::to_string(r.partner) + "); skipped");
    auto dp = quad::fundamental_discriminant(m);
    auto dm = quad::fundamental_discriminant(r.partner);
    r.d_plus = dp.value();
    r.d_minus = dm.value();
    r.r_plus = quad::p_rank(dp, 3, false, bound);
    r.r_minus = quad::p_rank(dm, 3, false, bound);
    r.ok = (r.r_plus > r.r_minus ? r.r_plus - r.r_minus : r.r_minus - r.r_plus) <= 1;
    return r;
}

RayClassNumber ray_class_number(FundamentalDiscriminant fd, u64 p, WhichIdeal which, bool narrow, i64 bound)
{
    i64 d = fd.value();
    require(is_prime(p), ErrorCode::NotPrime, "ray_class_number: p must be prime");
    require(!narrow || d > 0, ErrorCode::Precondition, "narrow ray class number needs d > 0");
    bool split = (p == 2) ? (mod(d, 8) == 1) : (d % static_cast<i64>(p) != 0 && jacobi(d, p) == 1);
    require(split, ErrorCode::NotSplit, std::to_string(p) + " does not split in Q(sqrt " + std::to_string(fd.radicand()) + ")");

    RayClassNumber out;
    out.narrow = narrow;
    out.phi = p - 1;
    out.class_number = quad::class_number(fd, false, bound);
    u64 r = (p == 2) ? 1 : sqrt_mod_prime(fd.radicand(), p);
    if (which == WhichIdeal::Second)
        r = (p - r) % p;
    u64 sd = sqrt_d_image(d, r, p);

    if (p == 2) {
        out.unit_index = narrow ? (quad::fundamental_unit(fd).norm == -1 ? 4 : 2) : 1;
        out.value = out.class_number * out.phi * (narrow ? 4 : 1) / out.unit_index;
        return out;
    }
    if (d < 0) {
        u64 gen_order;
        if (d == -4)
            gen_order = order_mod_prime(r, p); // i -> r
        else if (d == -3)
            gen_order = order_mod_prime(element_mod({1, 1}, sd, p), p); // (1 + sqrt -3)/2
        else
            gen_order = 2;
        out.unit_index = gen_order;
    } else {
        auto e = quad::fundamental_unit(fd);
        u64 em = element_mod({e.t, e.u}, sd, p);
        u64 oe = order_mod_prime(em, p);
        u64 img = std::lcm<u64>(2, oe);
        if (narrow)
            img = 2 * std::lcm<u64>(oe, e.norm == -1 ? 2 : 1);
        out.unit_index = img;
    }
    out.value = out.class_number * out.phi * (narrow ? 4 : 1) / out.unit_index;
    return out;
}

namespace {

/// b with b = d mod 2, b^2 = d mod 4a, for odd prime a not dividing d
i64 form_middle(i64 d, u64 a, u64 root)
{
    i64 b = static_cast<i64>(root);
    if (mod(b - d, 2) != 0)
        b += static_cast<i64>(a);
    return b;
}

/// generators (x + y sqrt d)/2 of norm a2 that lie in the lattice [A, (-B + sqrt d)/2]
std::optional<QuadElement> generator_in(i64 d, i64 A, i64 B, i64 a2)
{
    i64 ad = -d;
    i64 ymax = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(a2) / static_cast<double>(ad))) + 1;
    std::optional<QuadElement> best;
    for (i64 y = 0; y <= ymax; ++y) {
        i128 rem = 4 * static_cast<i128>(a2) - static_cast<i128>(ad) * y * y;
        if (rem < 0)
            break;
        i64 x = static_cast<i64>(isqrt(static_cast<u64>(rem)));
        if (static_cast<i128>(x) * x != rem)
            continue;
        for (i64 sy : {1, -1}) {
            for (i64 sx : {1, -1}) {
                i64 X = sx * x, Y = sy * y;
                if (mod(X - Y * d, 2) != 0)
                    continue;
                if (mod(X + Y * B, 2 * A) != 0)
                    continue;
                QuadElement e{X, Y};
                // canonical: x > 0 then y >= 0, conjugating when needed (the conjugate
                // generates the square of the conjugate ideal, which lies in the same class)
                mpz_class cx = e.x, cy = e.y;
                if (cx < 0 || (cx == 0 && cy < 0)) {
                    cx = -cx;
                    cy = -cy;
                }
                if (cy < 0)
                    cy = -cy;
                if (!best || cx < best->x || (cx == best->x && cy < best->y))
                    best = QuadElement{cx, cy};
            }
        }
    }
    return best;
}

} // namespace

PrimaryPrimeWitness is_2_primary(FundamentalDiscriminant fd, u64 p, u64 search_bound, i64 bound)
{
    i64 d = fd.value();
    require(d < 0, ErrorCode::Precondition, "is_2_primary needs an imaginary field");
    require(is_prime(p), ErrorCode::NotPrime, "p must be prime");
    require(p != 2, ErrorCode::Precondition, "p must be odd");
    require(d % static_cast<i64>(p) != 0 && jacobi(d, p) == 1, ErrorCode::NotSplit,
            std::to_string(p) + " does not split in Q(sqrt " + std::to_string(fd.radicand()) + ")");

    PrimaryPrimeWitness w;
    w.d = d;
    w.prime_norm = p;
    w.p_1_mod_4 = (p % 4 == 1);
    u64 r = sqrt_mod_prime(fd.radicand(), p);
    w.sqrt_radicand = r;
    u64 sd = sqrt_d_image(d, r, p);
    {
        i64 b = static_cast<i64>(sd);
        if (mod(b - d, 2) != 0)
            b += static_cast<i64>(p);
        w.prime_ideal = Form{static_cast<i64>(p), b, (b * b - d) / (4 * static_cast<i64>(p))};
        if (auto g = generator_in(d, static_cast<i64>(p), b, static_cast<i64>(p))) {
            // keep the generator lying in the chosen ideal, not its conjugate
            for (int sy : {1, -1}) {
                QuadElement e{g->x, sy * g->y};
                if (element_mod(e, sd, p) == 0) {
                    w.prime_generator = e;
                    break;
                }
            }
        }
    }

    quad::FormClassGroup cg(fd, bound);
    auto G = cg.as_group();
    auto dec = G.decompose();

    auto push_unit = [&](const std::string& label, QuadElement e) {
        SingularGenerator s;
        s.label = label;
        s.element = e;
        s.ideal_class = cg.rep(cg.identity());
        s.residue = element_mod(e, sd, p);
        s.character = Sign::from_int(jacobi(static_cast<i64>(s.residue), p));
        w.singular_basis.push_back(s);
    };
    if (d == -4)
        push_unit("i", {0, 1});
    else
        push_unit("-1", {-2, 0});

    auto primes = primes_up_to(search_bound);
    for (std::size_t k = 0; k < dec.divisors.size(); ++k) {
        if (dec.divisors[k] % 2 != 0)
            continue;
        std::size_t cls = G.pow(dec.generators[k], dec.divisors[k] / 2);
        bool found = false;
        for (u64 a : primes) {
            if (a == 2 || a == p || d % static_cast<i64>(a) == 0 || jacobi(d, a) != 1)
                continue;
            u64 ra = sqrt_mod_prime(d, a);
            i64 b = form_middle(d, a, ra);
            Form f{static_cast<i64>(a), b, (b * b - d) / (4 * static_cast<i64>(a))};
            if (cg.class_of(f) != cls)
                continue;
            // square of [a, (-b + sqrt d)/2]: [a^2, (-B + sqrt d)/2], B = b + 2ak
            i64 A = static_cast<i64>(a);
            i64 kk = mod(-f.c * static_cast<i64>(invmod(static_cast<u64>(mod(b, A)), a)), A);
            i64 B = b + 2 * A * kk;
            auto g = generator_in(d, A * A, B, A * A);
            if (!g) {
                // conjugate canonicalisation may have moved the generator; retry on the conjugate ideal
                g = generator_in(d, A * A, -B, A * A);
            }
            require(g.has_value(), ErrorCode::ConsistencyFailure, "square of an order-two ideal is not principal");
            SingularGenerator s;
            s.label = "omega";
            s.element = *g;
            s.ideal_class = f;
            s.auxiliary_prime = a;
            s.residue = element_mod(*g, sd, p);
            require(s.residue != 0, ErrorCode::ConsistencyFailure, "singular number not coprime to p");
            s.character = Sign::from_int(jacobi(static_cast<i64>(s.residue), p));
            w.singular_basis.push_back(s);
            found = true;
            break;
        }
        require(found, ErrorCode::BoundExceeded, "generator search bound exceeded");
    }
    bool all_plus = true;
    for (auto& s : w.singular_basis)
        all_plus = all_plus && s.character.is_plus();
    w.primary = w.p_1_mod_4 && all_plus;
    return w;
}

} // namespace scholz::ell2
