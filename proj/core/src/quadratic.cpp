#include "scholz/quadratic.hpp"

#include <cmath>
#include <optional>

namespace scholz::quad {

using arith::i128;

namespace {

i64 floor_div(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i64 checked(i128 v)
{
    require(v >= INT64_MIN && v <= INT64_MAX, ErrorCode::BoundExceeded, "form coefficient overflow");
    return static_cast<i64>(v);
}

Form normalize_definite(Form f, i64 d)
{
    i64 two_a = 2 * f.a;
    i64 t = arith::mod(f.b, two_a);
    if (t > f.a)
        t -= two_a;
    f.b = t;
    f.c = checked((static_cast<i128>(f.b) * f.b - d) / (4 * static_cast<i128>(f.a)));
    return f;
}

Form reduce_definite(Form f)
{
    i64 d = checked(static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c);
    if (f.a < 0)
        f = {-f.a, f.b, -f.c};
    f = normalize_definite(f, d);
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        f = {f.c, -f.b, f.a};
        f = normalize_definite(f, d);
    }
    return f;
}

std::tuple<i64, i64, i64> xgcd(i64 a, i64 b)
{
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = floor_div(old_r, r);
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_s, old_t, old_r};
}

Form positive_leading(Form f)
{
    if (f.a > 0)
        return f;
    if (f.c > 0)
        return {f.c, -f.b, f.a};
    raise(ErrorCode::ConsistencyFailure, "compose: form without positive outer coefficient");
}

} // namespace

bool is_fundamental_discriminant(i64 d)
{
    if (d == 0 || d == 1)
        return false;
    i64 r = arith::mod(d, 4);
    if (r == 1)
        return arith::is_squarefree(d);
    if (r == 0) {
        i64 m = d / 4;
        i64 mr = arith::mod(m, 4);
        return (mr == 2 || mr == 3) && arith::is_squarefree(m);
    }
    return false;
}

FundamentalDiscriminant::FundamentalDiscriminant(i64 d) : d_(d)
{
    require(is_fundamental_discriminant(d), ErrorCode::Precondition,
            std::to_string(d) + " is not a fundamental discriminant");
}

FundamentalDiscriminant fundamental_discriminant(i64 m)
{
    require(m != 0, ErrorCode::Precondition, "radicand must be nonzero");
    require(!arith::is_square(m), ErrorCode::PerfectSquare, std::to_string(m) + " is a perfect square");
    i64 k = arith::squarefree_kernel(m);
    return FundamentalDiscriminant(arith::mod(k, 4) == 1 ? k : 4 * k);
}

QuadUnit fundamental_unit(FundamentalDiscriminant fd)
{
    i64 d = fd.value();
    require(d > 0, ErrorCode::Precondition, "fundamental unit needs d > 0");
    const i64 s = static_cast<i64>(arith::isqrt(static_cast<u64>(d)));
    i64 P = d % 2, Q = 2;
    mpz_class p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1; // p_{-1}, p_{-2}, ...
    // p_k = a_k p_{k-1} + p_{k-2}; keep (p_{k-1}, p_{k-2}) in (p_prev, p_cur)
    const std::size_t guard = static_cast<std::size_t>(8.0 * std::sqrt(static_cast<double>(d)) *
                                                       (std::log(static_cast<double>(d)) + 2.0)) + 64;
    std::size_t k = 0;
    mpz_class pk, qk;
    while (true) {
        i64 a = floor_div(P + s, Q);
        pk = a * p_prev + p_cur;
        qk = a * q_prev + q_cur;
        p_cur = p_prev;
        p_prev = pk;
        q_cur = q_prev;
        q_prev = qk;
        i64 P1 = a * Q - P;
        i64 Q1 = (d - P1 * P1) / Q;
        P = P1;
        Q = Q1;
        ++k;
        if (Q == 2)
            break;
        require(k < guard, ErrorCode::ConsistencyFailure, "continued fraction did not close");
    }
    QuadUnit e;
    e.d = d;
    e.period = k;
    e.u = qk;
    e.t = (d % 2 == 1) ? mpz_class(2 * pk - qk) : mpz_class(2 * pk);
    e.norm = (k % 2 == 0) ? 1 : -1;
    mpz_class chk = e.t * e.t - mpz_class(static_cast<long>(d)) * e.u * e.u;
    require(chk == 4 * e.norm, ErrorCode::ConsistencyFailure, "unit norm check failed");
    return e;
}

bool is_reduced(const Form& f)
{
    i64 d = f.discriminant();
    if (d < 0)
        return f.a > 0 && std::abs(f.b) <= f.a && f.a <= f.c && !(f.b < 0 && (-f.b == f.a || f.a == f.c));
    i64 s = static_cast<i64>(arith::isqrt(static_cast<u64>(d)));
    i64 A = 2 * std::abs(f.a);
    return f.b > 0 && f.b <= s && A >= s - f.b + 1 && A <= s + f.b;
}

Form rho(const Form& f, i64 s)
{
    i64 d = checked(static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c);
    i64 C = std::abs(f.c);
    i64 lo = (C > s) ? -C + 1 : s - 2 * C + 1;
    i64 r = arith::mod(-f.b - lo, 2 * C) + lo;
    Form g{f.c, r, checked((static_cast<i128>(r) * r - d) / (4 * static_cast<i128>(f.c)))};
    return g;
}

Form reduce(const Form& f)
{
    i64 d = checked(static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c);
    if (d < 0)
        return reduce_definite(f);
    i64 s = static_cast<i64>(arith::isqrt(static_cast<u64>(d)));
    Form g = f;
    for (int guard = 0; !is_reduced(g); ++guard) {
        require(guard < 100000, ErrorCode::ConsistencyFailure, "indefinite reduction did not terminate");
        g = rho(g, s);
    }
    return g;
}

Form compose(const Form& f, const Form& g)
{
    i64 D = f.discriminant();
    Form f1 = positive_leading(f), f2 = positive_leading(g);
    if (f1.a > f2.a)
        std::swap(f1, f2);
    i64 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
    i64 s = (b1 + b2) / 2;
    i64 n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        auto [u, v, g0] = xgcd(a2, a1);
        (void)v;
        y1 = u;
        d = g0;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto [xx, yy, g1] = xgcd(s, d);
        x2 = xx;
        y2 = -yy;
        d1 = g1;
    }
    i64 v1 = a1 / d1, v2 = a2 / d1;
    i128 rr = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * c2) % v1;
    if (rr < 0)
        rr += v1;
    i64 r = static_cast<i64>(rr);
    i128 b3 = static_cast<i128>(b2) + 2 * static_cast<i128>(v2) * r;
    i128 a3 = static_cast<i128>(v1) * v2;
    i128 num = b3 * b3 - D;
    require(num % (4 * a3) == 0, ErrorCode::ConsistencyFailure, "composition produced non-integral form");
    Form h{checked(a3), checked(b3), checked(num / (4 * a3))};
    return reduce(h);
}

Form principal_form(i64 d)
{
    i64 b0 = arith::mod(d, 2);
    return reduce(Form{1, b0, (b0 * b0 - d) / 4});
}

FormClassGroup::FormClassGroup(FundamentalDiscriminant fd, i64 bound) : d_(fd)
{
    i64 d = fd.value();
    require(std::abs(d) <= bound, ErrorCode::BoundExceeded,
            "|d| = " + std::to_string(std::abs(d)) + " exceeds class group bound " + std::to_string(bound));
    if (d < 0) {
        i64 ad = -d;
        for (i64 a = 1; 3 * a * a <= ad; ++a) {
            i64 b = -a + 1;
            if (arith::mod(b - d, 2) != 0)
                ++b;
            for (; b <= a; b += 2) {
                i64 num = b * b - d;
                if (num % (4 * a) != 0)
                    continue;
                i64 c = num / (4 * a);
                if (c < a || (c == a && b < 0))
                    continue;
                lookup_.emplace(Form{a, b, c}, reps_.size());
                reps_.push_back(Form{a, b, c});
            }
        }
    } else {
        s_ = static_cast<i64>(arith::isqrt(static_cast<u64>(d)));
        std::vector<Form> reduced;
        for (i64 b = (d % 2 == 0) ? 2 : 1; b <= s_; b += 2) {
            i64 N = (d - b * b) / 4;
            i64 lo = (s_ - b + 2) / 2, hi = (s_ + b) / 2;
            for (i64 A = lo; A <= hi; ++A) {
                if (N % A != 0)
                    continue;
                reduced.push_back(Form{A, b, -N / A});
                reduced.push_back(Form{-A, b, N / A});
            }
        }
        std::unordered_map<Form, std::size_t, FormHash> seen;
        for (const Form& f : reduced) {
            if (seen.count(f))
                continue;
            std::size_t cls = reps_.size();
            reps_.push_back(f);
            Form g = f;
            std::size_t guard = 0;
            do {
                seen.emplace(g, cls);
                g = rho(g, s_);
                require(++guard <= reduced.size() + 1 && is_reduced(g), ErrorCode::ConsistencyFailure,
                        "rho cycle left the reduced set");
            } while (!(g == f));
        }
        lookup_ = std::move(seen);
    }
    identity_ = class_of(principal_form(d));
}

std::size_t FormClassGroup::class_of(const Form& f) const
{
    Form g = reduce(f);
    auto it = lookup_.find(g);
    require(it != lookup_.end(), ErrorCode::ConsistencyFailure, "reduced form not enumerated");
    return it->second;
}

std::size_t FormClassGroup::mul(std::size_t i, std::size_t j) const { return class_of(compose(reps_[i], reps_[j])); }

std::size_t FormClassGroup::inverse(std::size_t i) const
{
    const Form& f = reps_[i];
    return class_of(Form{f.a, -f.b, f.c});
}

FiniteAbelianGroup FormClassGroup::as_group() const
{
    return FiniteAbelianGroup(size(), identity_, [this](std::size_t i, std::size_t j) { return mul(i, j); });
}

std::size_t FormClassGroup::minus_one_class() const
{
    i64 d = d_.value();
    require(d > 0, ErrorCode::Precondition, "minus_one_class needs d > 0");
    i64 b0 = d % 2;
    return class_of(Form{-1, b0, (d - b0 * b0) / 4});
}

WideQuotient wide_quotient(const FormClassGroup& g)
{
    WideQuotient w;
    w.wide_of_narrow.assign(g.size(), SIZE_MAX);
    std::size_t J = g.discriminant().value() > 0 ? g.minus_one_class() : g.identity();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (w.wide_of_narrow[i] != SIZE_MAX)
            continue;
        std::size_t k = w.narrow_rep.size();
        w.narrow_rep.push_back(i);
        w.wide_of_narrow[i] = k;
        w.wide_of_narrow[g.mul(i, J)] = k;
    }
    return w;
}

namespace {

ClassGroupStructure structure_of(const FiniteAbelianGroup& G, const FormClassGroup& cg,
                                 const std::vector<std::size_t>* rep_map, bool narrow)
{
    ClassGroupStructure out;
    out.d = cg.discriminant().value();
    out.narrow = narrow;
    out.order = G.size();
    auto dec = G.decompose();
    out.elementary_divisors = dec.divisors;
    for (std::size_t gi : dec.generators)
        out.generators.push_back(cg.rep(rep_map ? (*rep_map)[gi] : gi));
    return out;
}

} // namespace

ClassGroupStructure class_group(FundamentalDiscriminant d, bool narrow, i64 bound)
{
    FormClassGroup cg(d, bound);
    if (d.value() < 0 || narrow)
        return structure_of(cg.as_group(), cg, nullptr, narrow || d.value() < 0);
    auto w = wide_quotient(cg);
    FiniteAbelianGroup G(w.narrow_rep.size(), w.wide_of_narrow[cg.identity()],
                         [&](std::size_t i, std::size_t j) {
                             return w.wide_of_narrow[cg.mul(w.narrow_rep[i], w.narrow_rep[j])];
                         });
    return structure_of(G, cg, &w.narrow_rep, false);
}

unsigned p_rank(FundamentalDiscriminant d, u64 p, bool narrow, i64 bound)
{
    require(arith::is_prime(p), ErrorCode::NotPrime, "p_rank: p must be prime");
    FormClassGroup cg(d, bound);
    if (d.value() < 0 || narrow)
        return cg.as_group().p_rank(p);
    auto w = wide_quotient(cg);
    FiniteAbelianGroup G(w.narrow_rep.size(), w.wide_of_narrow[cg.identity()],
                         [&](std::size_t i, std::size_t j) {
                             return w.wide_of_narrow[cg.mul(w.narrow_rep[i], w.narrow_rep[j])];
                         });
    return G.p_rank(p);
}

u64 class_number(FundamentalDiscriminant d, bool narrow, i64 bound)
{
    FormClassGroup cg(d, bound);
    if (d.value() < 0 || narrow || cg.minus_one_class() == cg.identity())
        return cg.size();
    return cg.size() / 2;
}

// ---- biquadratic squareness ----------------------------------------------

namespace {

struct QF { // x + y sqrt(m)
    mpq_class x, y;
};

std::optional<mpq_class> rational_sqrt(const mpq_class& a)
{
    if (sgn(a) < 0)
        return std::nullopt;
    if (!arith::is_square(a.get_num()) || !arith::is_square(a.get_den()))
        return std::nullopt;
    mpz_class n, dd;
    mpz_sqrt(n.get_mpz_t(), a.get_num_mpz_t());
    mpz_sqrt(dd.get_mpz_t(), a.get_den_mpz_t());
    mpq_class r(n, dd);
    r.canonicalize();
    return r;
}

QF mulF(const QF& a, const QF& b, const mpz_class& m)
{
    return {a.x * b.x + a.y * b.y * m, a.x * b.y + a.y * b.x};
}

QF addF(const QF& a, const QF& b) { return {a.x + b.x, a.y + b.y}; }
QF subF(const QF& a, const QF& b) { return {a.x - b.x, a.y - b.y}; }
bool zeroF(const QF& a) { return sgn(a.x) == 0 && sgn(a.y) == 0; }
bool eqF(const QF& a, const QF& b) { return a.x == b.x && a.y == b.y; }

QF invF(const QF& a, const mpz_class& m)
{
    mpq_class n = a.x * a.x - a.y * a.y * m;
    return {a.x / n, -a.y / n};
}

QF scaleF(const QF& a, const mpq_class& s) { return {a.x * s, a.y * s}; }

std::optional<QF> sqrtF(const QF& a, const mpz_class& m)
{
    if (sgn(a.y) == 0) {
        if (auto r = rational_sqrt(a.x))
            return QF{*r, 0};
        if (auto r = rational_sqrt(a.x / m))
            return QF{0, *r};
        return std::nullopt;
    }
    auto n = rational_sqrt(a.x * a.x - a.y * a.y * m);
    if (!n)
        return std::nullopt;
    for (int sg : {1, -1}) {
        mpq_class t = (a.x + sg * (*n)) / 2;
        if (sgn(t) == 0)
            continue;
        auto mu = rational_sqrt(t);
        if (!mu)
            continue;
        QF r{*mu, a.y / (2 * (*mu))};
        if (eqF(mulF(r, r, m), a))
            return r;
    }
    return std::nullopt;
}

// L element: alpha + beta sqrt(q), alpha, beta in Q(sqrt p)
struct LE {
    QF alpha, beta;
};

LE mulL(const LE& u, const LE& v, const mpz_class& p, const mpz_class& q)
{
    QF bb = mulF(u.beta, v.beta, p);
    return {addF(mulF(u.alpha, v.alpha, p), scaleF(bb, mpq_class(q))),
            addF(mulF(u.alpha, v.beta, p), mulF(u.beta, v.alpha, p))};
}

std::optional<LE> sqrtL(const LE& g, const mpz_class& p, const mpz_class& q)
{
    auto verify = [&](const LE& r) {
        LE s = mulL(r, r, p, q);
        return eqF(s.alpha, g.alpha) && eqF(s.beta, g.beta);
    };
    if (zeroF(g.beta)) {
        if (auto r = sqrtF(g.alpha, p))
            return LE{*r, {0, 0}};
        if (auto r = sqrtF(scaleF(g.alpha, mpq_class(1, 1) / mpq_class(q)), p))
            return LE{{0, 0}, *r};
        return std::nullopt;
    }
    QF N = subF(mulF(g.alpha, g.alpha, p), scaleF(mulF(g.beta, g.beta, p), mpq_class(q)));
    auto rho = sqrtF(N, p);
    if (!rho)
        return std::nullopt;
    for (int sg : {1, -1}) {
        QF t = scaleF(addF(g.alpha, scaleF(*rho, sg)), mpq_class(1, 2));
        if (zeroF(t))
            continue;
        auto mu = sqrtF(t, p);
        if (!mu)
            continue;
        QF nu = mulF(g.beta, invF(scaleF(*mu, 2), p), p);
        LE r{*mu, nu};
        if (verify(r))
            return r;
    }
    return std::nullopt;
}

} // namespace

SquarenessResult is_square_in_biquadratic(u64 p, u64 q, BiquadraticUnit gamma)
{
    require(arith::is_prime(p) && arith::is_prime(q), ErrorCode::NotPrime, "biquadratic: p, q must be prime");
    require(p != q, ErrorCode::Precondition, "biquadratic: p and q must differ");
    auto ep = fundamental_unit(fundamental_discriminant(static_cast<i64>(p)));
    auto eq = fundamental_unit(fundamental_discriminant(static_cast<i64>(q)));
    auto epq = fundamental_unit(fundamental_discriminant(static_cast<i64>(p * q)));

    SquarenessResult res;
    // sign of gamma at the embedding (sp, sq): a conjugated factor has sign N(eps)
    res.totally_positive = true;
    for (int sp : {1, -1}) {
        for (int sq : {1, -1}) {
            int s = 1;
            if (gamma.a % 2 && sp < 0)
                s *= ep.norm;
            if (gamma.b % 2 && sq < 0)
                s *= eq.norm;
            if (gamma.c % 2 && sp != sq)
                s *= epq.norm;
            if (s < 0)
                res.totally_positive = false;
        }
    }
    if (!res.totally_positive)
        return res;

    mpz_class P = static_cast<unsigned long>(p), Q = static_cast<unsigned long>(q);
    auto half = [](const mpz_class& v) {
        mpq_class h(v, 2);
        h.canonicalize();
        return h;
    };
    // radicands of the unit's own field: the unit of Q(sqrt d) with d = 4m carries sqrt d = 2 sqrt m
    auto unit_coeffs = [&](const QuadUnit& e, u64 m) {
        mpq_class x = half(e.t);
        mpq_class y = (e.d == static_cast<i64>(m)) ? half(e.u) : mpq_class(e.u);
        return std::pair<mpq_class, mpq_class>(x, y);
    };
    LE g{{1, 0}, {0, 0}};
    for (unsigned i = 0; i < gamma.a; ++i) {
        auto [x, y] = unit_coeffs(ep, p);
        g = mulL(g, LE{{x, y}, {0, 0}}, P, Q);
    }
    for (unsigned i = 0; i < gamma.b; ++i) {
        auto [x, y] = unit_coeffs(eq, q);
        g = mulL(g, LE{{x, 0}, {y, 0}}, P, Q);
    }
    for (unsigned i = 0; i < gamma.c; ++i) {
        auto [x, y] = unit_coeffs(epq, p * q);
        g = mulL(g, LE{{x, 0}, {0, y}}, P, Q);
    }
    if (auto r = sqrtL(g, P, Q)) {
        res.square = true;
        res.root = {r->alpha.x, r->alpha.y, r->beta.x, r->beta.y};
    }
    return res;
}

} // namespace scholz::quad
