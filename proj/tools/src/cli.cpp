#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pool.hpp"
#include "scholz/addchain.hpp"
#include "scholz/arith.hpp"
#include "scholz/construction.hpp"
#include "scholz/cubic.hpp"
#include "scholz/discbounds.hpp"
#include "scholz/ell2.hpp"
#include "scholz/error.hpp"
#include "scholz/quadratic.hpp"

namespace scholz::cli {

using json = nlohmann::ordered_json;
using arith::i64;
using arith::u64;

namespace {

enum class Format { Json, Table, Tsv };

struct Bounds {
    u64 d4_search = 1'000'000;
    u64 pq_search = 10'000'000;
    u64 primary_search = 1'000'000;
    i64 unit_height = 50;
    i64 class_group = 100'000'000;
    u64 addchain = addchain::default_bound;
};

struct Settings {
    Format format = Format::Json;
    unsigned jobs = 1;
    bool fail_fast = false;
    bool timing = false;
    std::uint64_t seed = 1;
    std::optional<i64> max;
    std::optional<std::pair<i64, i64>> range;
    Bounds bounds;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Item {
    json record;
    std::optional<std::string> violation;
    bool skipped = false;
};

struct Report {
    std::string command;
    json parameters = json::object();
    std::vector<Item> items;
};

json num(const mpz_class& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

json form_json(const quad::Form& f) { return json::array({f.a, f.b, f.c}); }

std::pair<i64, i64> parse_range(const std::string& s)
{
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw UsageError("--range: malformed range '" + s + "' (expected a..b)");
    i64 a = std::stoll(m[1]), b = std::stoll(m[2]);
    return {a, b};
}

/// [lo, hi] from --range, else [default_lo, --max or default_hi].
std::pair<i64, i64> span(const Settings& s, i64 default_lo, i64 default_hi)
{
    if (s.range)
        return *s.range;
    return {default_lo, s.max.value_or(default_hi)};
}

void put_span(Report& r, const Settings& s, i64 lo, i64 hi)
{
    r.parameters["range"] = std::to_string(lo) + ".." + std::to_string(hi);
    (void)s;
}

std::vector<u64> primes_in(i64 lo, i64 hi, u64 modulus = 1, u64 residue = 0)
{
    std::vector<u64> out;
    if (hi < 2)
        return out;
    for (u64 p : arith::primes_up_to(static_cast<u64>(hi)))
        if (static_cast<i64>(p) >= lo && p % modulus == residue % modulus)
            out.push_back(p);
    return out;
}

std::vector<i64> positionals(const std::vector<std::string>& raw, std::size_t min, std::size_t max,
                             const std::string& cmd)
{
    if (raw.size() < min || raw.size() > max)
        throw UsageError(cmd + ": expected " + (min == max ? std::to_string(min) : std::to_string(min) + ".." +
                                                                                  std::to_string(max)) +
                         " positional arguments, got " + std::to_string(raw.size()));
    std::vector<i64> v;
    for (auto& s : raw) {
        try {
            std::size_t pos = 0;
            i64 x = std::stoll(s, &pos);
            if (pos != s.size())
                throw std::invalid_argument(s);
            v.push_back(x);
        } catch (const std::exception&) {
            throw UsageError(cmd + ": '" + s + "' is not an integer");
        }
    }
    return v;
}

template <class In, class Fn>
std::vector<Item> scan(const std::vector<In>& inputs, const Settings& s, Fn&& fn)
{
    return parallel_map<Item>(
        inputs.size(), s.jobs, [&](std::size_t i) { return fn(inputs[i]); },
        [&](const Item& it) { return s.fail_fast && it.violation.has_value(); });
}

Item error_item(json input, const Error& e, bool violation = true)
{
    Item it;
    it.record = std::move(input);
    it.record["error"] = std::string(to_string(e.code()));
    it.record["message"] = e.what();
    if (violation)
        it.violation = it.record.dump();
    else
        it.skipped = true;
    return it;
}

template <class Fn>
Item guarded(json input, Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        return error_item(std::move(input), e);
    }
}

// ---------------------------------------------------------------- ell = 2

Report cmd_reciprocity(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "reciprocity";
    std::vector<std::pair<u64, u64>> pairs;
    if (a.size() == 2) {
        pairs.emplace_back(a[0], a[1]);
        r.parameters["p"] = a[0];
        r.parameters["q"] = a[1];
    } else {
        auto [lo, hi] = span(s, 2, 500);
        put_span(r, s, lo, hi);
        auto ps = primes_in(lo, hi, 4, 1);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                if (arith::jacobi(static_cast<i64>(ps[i]), ps[j]) == 1)
                    pairs.emplace_back(ps[i], ps[j]);
    }
    r.items = scan(pairs, s, [](std::pair<u64, u64> pq) {
        return guarded(json{{"p", pq.first}, {"q", pq.second}}, [&] {
            auto rep = ell2::scholz_reciprocity_check(pq.first, pq.second);
            Item it;
            it.record = json{{"p", rep.p},
                             {"q", rep.q},
                             {"eps_p_mod_q", rep.lhs.value()},
                             {"quartic_product", rep.rhs.value()},
                             {"eps_q_mod_p", rep.lhs_swapped.value()},
                             {"holds", rep.equal}};
            if (!rep.equal)
                it.violation = "reciprocity fails at (" + std::to_string(rep.p) + "," + std::to_string(rep.q) + ")";
            return it;
        });
    });
    return r;
}

std::vector<std::pair<u64, u64>> pairs_1_mod_4(const std::vector<i64>& a, const Settings& s, Report& r,
                                               i64 default_max)
{
    std::vector<std::pair<u64, u64>> pairs;
    if (a.size() == 2) {
        pairs.emplace_back(a[0], a[1]);
        r.parameters["p"] = a[0];
        r.parameters["q"] = a[1];
        return pairs;
    }
    auto [lo, hi] = span(s, 2, default_max);
    put_span(r, s, lo, hi);
    auto ps = primes_in(lo, hi, 4, 1);
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            pairs.emplace_back(ps[i], ps[j]);
    return pairs;
}

json labels(const std::vector<u64>& v)
{
    json a = json::array();
    for (auto x : v)
        a.push_back(x);
    return a;
}

Report cmd_pell(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "pell";
    auto pairs = pairs_1_mod_4(a, s, r, 300);
    i64 bound = s.bounds.class_group;
    r.parameters["class_group_bound"] = bound;
    r.items = scan(pairs, s, [&](std::pair<u64, u64> pq) {
        return guarded(json{{"p", pq.first}, {"q", pq.second}}, [&] {
            auto c = ell2::negative_pell_classify(pq.first, pq.second);
            auto t = ell2::pell_ground_truth(pq.first, pq.second, bound);
            auto mismatch = ell2::pell_mismatch(c, t);
            Item it;
            it.record = json{{"p", c.p},
                             {"q", c.q},
                             {"case", ell2::to_string(c.pell_case)},
                             {"legendre", c.legendre},
                             {"predicted_norm", c.predicted_norm ? json(*c.predicted_norm) : json(nullptr)},
                             {"predicted_cl2", ell2::to_string(c.predicted_cl2)},
                             {"predicted_cl2_plus", ell2::to_string(c.predicted_cl2_plus)},
                             {"norm", t.norm},
                             {"cl2", labels(t.cl2)},
                             {"cl2_plus", labels(t.cl2_plus)},
                             {"match", !mismatch.has_value()}};
            if (mismatch)
                it.violation = "(" + std::to_string(c.p) + "," + std::to_string(c.q) + "): " + *mismatch;
            return it;
        });
    });
    return r;
}

Report cmd_reflect(const std::vector<i64>& a, const Settings& s, std::ostream& err)
{
    Report r;
    r.command = "reflect";
    std::vector<i64> ms;
    if (a.size() == 1) {
        ms.push_back(a[0]);
        r.parameters["m"] = a[0];
    } else {
        i64 lo, hi;
        if (s.range) {
            std::tie(lo, hi) = *s.range;
        } else {
            hi = s.max.value_or(20000);
            lo = -hi;
        }
        put_span(r, s, lo, hi);
        for (i64 m = lo; m <= hi; ++m)
            if ((m > 1 || m < -1) && arith::is_squarefree(m))
                ms.push_back(m);
    }
    i64 bound = s.bounds.class_group;
    r.parameters["class_group_bound"] = bound;
    r.items = scan(ms, s, [&](i64 m) {
        try {
            auto rep = ell2::reflection_check(m, bound);
            Item it;
            it.record = json{{"m", rep.m},         {"partner", rep.partner}, {"d_plus", rep.d_plus},
                             {"d_minus", rep.d_minus}, {"r_plus", rep.r_plus},   {"r_minus", rep.r_minus},
                             {"ok", rep.ok}};
            if (!rep.ok)
                it.violation = "3-ranks differ by more than 1 at m = " + std::to_string(m);
            return it;
        } catch (const Error& e) {
            return error_item(json{{"m", m}}, e, e.code() != ErrorCode::Inapplicable);
        }
    });
    for (auto& it : r.items)
        if (it.skipped)
            err << "reflect: skipped m = " << it.record["m"] << " (" << it.record["message"].get<std::string>()
                << ")\n";
    return r;
}

Report cmd_knot(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "knot";
    auto pairs = pairs_1_mod_4(a, s, r, 100);
    r.items = scan(pairs, s, [](std::pair<u64, u64> pq) {
        return guarded(json{{"p", pq.first}, {"q", pq.second}}, [&] {
            auto k = ell2::knot_report(pq.first, pq.second);
            Item it;
            it.record = json{{"p", k.p},
                             {"q", k.q},
                             {"unit_knot_order", k.unit_knot_order},
                             {"unit_knot_reason", k.unit_knot_reason},
                             {"redei", k.redei},
                             {"number_knot_nontrivial", k.number_knot_nontrivial},
                             {"number_knot_order", k.number_knot_order},
                             {"ideal_knot_order", k.ideal_knot_order}};
            if (k.ideal_knot_order * k.unit_knot_order != k.number_knot_order)
                it.violation = "knot orders do not multiply at (" + std::to_string(k.p) + "," + std::to_string(k.q) +
                               ")";
            return it;
        });
    });
    return r;
}

Report cmd_rayclass(const std::vector<i64>& a, const Settings& s, bool narrow, bool second)
{
    Report r;
    r.command = "rayclass";
    r.parameters["d"] = a[0];
    r.parameters["p"] = a[1];
    r.parameters["narrow"] = narrow;
    r.parameters["ideal"] = second ? "second" : "first";
    std::vector<int> one{0};
    r.items = scan(one, s, [&](int) {
        auto v = ell2::ray_class_number(quad::FundamentalDiscriminant(a[0]), static_cast<u64>(a[1]),
                                        second ? ell2::WhichIdeal::Second : ell2::WhichIdeal::First, narrow,
                                        s.bounds.class_group);
        Item it;
        it.record = json{{"d", a[0]},
                         {"p", a[1]},
                         {"ideal", second ? "second" : "first"},
                         {"narrow", v.narrow},
                         {"value", v.value},
                         {"class_number", v.class_number},
                         {"phi", v.phi},
                         {"unit_index", v.unit_index}};
        return it;
    });
    return r;
}

json quad_elem(const ell2::QuadElement& e) { return json::array({num(e.x), num(e.y)}); }

Report cmd_primary2(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "primary2";
    quad::FundamentalDiscriminant fd(a[0]);
    r.parameters["d"] = a[0];
    std::vector<u64> ps;
    if (a.size() == 2) {
        ps.push_back(static_cast<u64>(a[1]));
        r.parameters["p"] = a[1];
    } else {
        auto [lo, hi] = span(s, 3, 200);
        put_span(r, s, lo, hi);
        for (u64 p : primes_in(lo, hi))
            if (p != 2 && a[0] % static_cast<i64>(p) != 0 && arith::jacobi(a[0], p) == 1)
                ps.push_back(p);
    }
    r.parameters["primary_search_bound"] = s.bounds.primary_search;
    r.items = scan(ps, s, [&](u64 p) {
        return guarded(json{{"d", a[0]}, {"p", p}}, [&] {
            auto w = ell2::is_2_primary(fd, p, s.bounds.primary_search, s.bounds.class_group);
            json sing = json::array();
            for (auto& g : w.singular_basis)
                sing.push_back(json{{"label", g.label},
                                    {"element", quad_elem(g.element)},
                                    {"ideal_class", form_json(g.ideal_class)},
                                    {"auxiliary_prime", g.auxiliary_prime},
                                    {"residue", g.residue},
                                    {"character", g.character.value()}});
            Item it;
            it.record = json{{"d", w.d},
                             {"p", w.prime_norm},
                             {"sqrt_radicand", w.sqrt_radicand},
                             {"prime_ideal", form_json(w.prime_ideal)},
                             {"prime_generator", w.prime_generator ? quad_elem(*w.prime_generator) : json(nullptr)},
                             {"p_1_mod_4", w.p_1_mod_4},
                             {"singular", sing},
                             {"primary", w.primary}};
            return it;
        });
    });
    return r;
}

// ---------------------------------------------------------------- ell = 3

json chars(const std::array<unsigned, 3>& e) { return json::array({e[0], e[1], e[2]}); }

Report cmd_cubicsym(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "cubicsym";
    u64 q = static_cast<u64>(a[0]);
    r.parameters["q"] = q;
    r.parameters["unit_height_bound"] = s.bounds.unit_height;
    auto K = cubic::period_field(q);
    auto U = cubic::unit_search(K, s.bounds.unit_height);
    std::vector<std::pair<u64, int>> in;
    std::vector<u64> ps;
    if (a.size() == 2) {
        ps.push_back(static_cast<u64>(a[1]));
        r.parameters["p"] = a[1];
    } else {
        auto [lo, hi] = span(s, 2, 200);
        put_span(r, s, lo, hi);
        for (u64 p : primes_in(lo, hi, 3, 1))
            if (p != q && cubic::splits_completely(K, p))
                ps.push_back(p);
    }
    for (u64 p : ps)
        for (int j = 0; j < 2; ++j)
            in.emplace_back(p, j);
    r.items = scan(in, s, [&](std::pair<u64, int> pj) {
        json id{{"q", q}, {"p", pj.first}, {"unit", pj.second}};
        return guarded(id, [&] {
            auto c = cubic::symbolic_class(K, U.units[pj.second], pj.first);
            Item it;
            it.record = id;
            it.record["unit_norm"] = U.norms[pj.second];
            it.record["characters"] = chars(c.characters);
            it.record["level"] = c.level;
            it.record["squared"] = c.squared;
            return it;
        });
    });
    return r;
}

Report cmd_recip3(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "recip3";
    r.parameters["unit_height_bound"] = s.bounds.unit_height;
    std::vector<std::pair<u64, u64>> pairs;
    std::vector<u64> primes;
    if (a.size() == 2) {
        pairs.emplace_back(a[0], a[1]);
        primes = {static_cast<u64>(a[0]), static_cast<u64>(a[1])};
        r.parameters["p"] = a[0];
        r.parameters["q"] = a[1];
    } else {
        auto [lo, hi] = span(s, 2, 200);
        put_span(r, s, lo, hi);
        primes = primes_in(lo, hi, 3, 1);
        for (std::size_t i = 0; i < primes.size(); ++i)
            for (std::size_t j = i + 1; j < primes.size(); ++j)
                if (cubic::is_cubic_residue(primes[i], primes[j]) && cubic::is_cubic_residue(primes[j], primes[i]))
                    pairs.emplace_back(primes[i], primes[j]);
    }
    struct FieldData {
        std::optional<cubic::PeriodField> K;
        std::optional<cubic::CubicUnitSystem> U;
        std::optional<Error> error;
    };
    std::map<u64, FieldData> fields;
    for (auto& pq : pairs)
        {
        fields[pq.first];
        fields[pq.second];
    }
    std::vector<u64> keys;
    for (auto& kv : fields)
        keys.push_back(kv.first);
    auto built = parallel_map<FieldData>(
        keys.size(), s.jobs,
        [&](std::size_t i) {
            FieldData f;
            try {
                f.K = cubic::period_field(keys[i]);
                f.U = cubic::unit_search(*f.K, s.bounds.unit_height);
            } catch (const Error& e) {
                f.error = e;
            }
            return f;
        },
        [](const FieldData&) { return false; });
    for (std::size_t i = 0; i < keys.size(); ++i)
        fields[keys[i]] = built[i];

    r.items = scan(pairs, s, [&](std::pair<u64, u64> pq) {
        json id{{"p", pq.first}, {"q", pq.second}};
        auto& F = fields.at(pq.first);
        auto& G = fields.at(pq.second);
        if (F.error)
            return error_item(id, *F.error);
        if (G.error)
            return error_item(id, *G.error);
        try {
            auto rep = cubic::l3_reciprocity_check(*F.K, *F.U, *G.K, *G.U);
            Item it;
            it.record = id;
            it.record["level_pq"] = rep.class_pq.level;
            it.record["level_qp"] = rep.class_qp.level;
            it.record["characters_pq"] = chars(rep.class_pq.characters);
            it.record["characters_qp"] = chars(rep.class_qp.characters);
            it.record["biconditional_holds"] = rep.biconditional_holds;
            if (!rep.biconditional_holds)
                it.violation = "biconditional fails at (" + std::to_string(pq.first) + "," +
                               std::to_string(pq.second) + ")";
            return it;
        } catch (const Error& e) {
            // refusal without certified saturation is a skip, not a contradiction
            return error_item(id, e, e.code() != ErrorCode::NotSaturated);
        }
    });
    return r;
}

// ---------------------------------------------------------------- construction

json cert_json(const construct::ConstructionCertificate& c) { return json::parse(construct::to_json(c)); }

Report cmd_plan_d4(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "plan-d4";
    std::vector<u64> ps;
    if (a.size() == 1) {
        ps.push_back(static_cast<u64>(a[0]));
        r.parameters["p"] = a[0];
    } else {
        auto [lo, hi] = span(s, 2, 100);
        put_span(r, s, lo, hi);
        ps = primes_in(lo, hi, 4, 1);
    }
    r.parameters["search_bound"] = s.bounds.d4_search;
    r.items = scan(ps, s, [&](u64 p) {
        auto c = construct::d4_plan(p, s.bounds.d4_search);
        Item it;
        it.record = cert_json(c);
        if (!c.complete)
            it.violation = "incomplete d4 certificate for p = " + std::to_string(p);
        return it;
    });
    return r;
}

Report cmd_plan_pq(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "plan-pq";
    r.parameters["p"] = a[0];
    r.parameters["q"] = a[1];
    r.parameters["search_bound"] = s.bounds.pq_search;
    r.parameters["unit_height_bound"] = s.bounds.unit_height;
    std::vector<int> one{0};
    r.items = scan(one, s, [&](int) {
        auto c = construct::pq_plan(static_cast<u64>(a[0]), static_cast<u64>(a[1]), s.bounds.pq_search,
                                    s.bounds.unit_height);
        Item it;
        it.record = cert_json(c);
        if (!c.complete)
            it.violation = "incomplete pq certificate";
        return it;
    });
    return r;
}

Report cmd_cubic_from_unit(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "cubic-from-unit";
    std::vector<i64> ms;
    bool single = a.size() == 1;
    if (single) {
        ms.push_back(a[0]);
        r.parameters["m"] = a[0];
    } else {
        auto [lo, hi] = span(s, 1, 500);
        put_span(r, s, lo, hi);
        for (i64 m = std::max<i64>(lo, 1); m <= hi; ++m)
            if (m % 3 != 0 && arith::is_squarefree(m))
                ms.push_back(m);
    }
    r.items = scan(ms, s, [&](i64 m) {
        try {
            auto c = construct::cubic_from_unit(m);
            unsigned rank = quad::p_rank(quad::fundamental_discriminant(-m), 3, false, s.bounds.class_group);
            Item it;
            it.record = json{{"m", m},
                             {"status", "ok"},
                             {"poly", c.certificate.base_data[3].second},
                             {"disc", num(c.disc)},
                             {"disc_factorization", c.certificate.base_data[5].second},
                             {"fd_minus_m", c.fd_minus_m},
                             {"cofactor", num(c.cofactor)},
                             {"index_v3", c.index_v3},
                             {"cofactor_v3", c.cofactor_v3},
                             {"unramified_claim", c.unramified_claim},
                             {"class_3_rank_minus_m", rank}};
            if (c.companion_a) {
                it.record["companion_a"] = *c.companion_a;
                it.record["companion_disc"] = num(*c.companion_disc);
            }
            it.record["certificate"] = cert_json(c.certificate);
            if (c.unramified_claim && rank == 0)
                it.violation = "unramified claim at m = " + std::to_string(m) + " but 3 does not divide h(-m)";
            return it;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Inapplicable || e.code() == ErrorCode::Degenerate) {
                Item it;
                it.record = json{{"m", m},
                                 {"status", e.code() == ErrorCode::Inapplicable ? "inapplicable" : "degenerate"},
                                 {"message", e.what()}};
                it.skipped = !single;
                return it;
            }
            return error_item(json{{"m", m}}, e);
        }
    });
    return r;
}

// ---------------------------------------------------------------- addchain

json chain_json(const std::vector<u64>& t)
{
    json a = json::array();
    for (auto x : t)
        a.push_back(x);
    return a;
}

std::vector<u64> mutate(std::vector<u64> c, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_int_distribution<std::size_t> pos(0, c.size() - 1);
    switch (kind(rng)) {
    case 0: { // perturb one term
        std::size_t i = pos(rng);
        std::uniform_int_distribution<int> d(-3, 3);
        i64 v = static_cast<i64>(c[i]) + d(rng);
        c[i] = v > 0 ? static_cast<u64>(v) : 1;
        break;
    }
    case 1: // drop a term
        if (c.size() > 1)
            c.erase(c.begin() + static_cast<std::ptrdiff_t>(1 + pos(rng) % (c.size() - 1)));
        break;
    case 2: { // insert a random value
        std::uniform_int_distribution<u64> v(1, c.back() * 2);
        c.insert(c.begin() + static_cast<std::ptrdiff_t>(pos(rng)), v(rng));
        break;
    }
    case 3: // swap neighbours
        if (c.size() > 2) {
            std::size_t i = 1 + pos(rng) % (c.size() - 2);
            std::swap(c[i], c[i + 1]);
        }
        break;
    default: // replace the start
        c[0] = 2 + pos(rng);
        break;
    }
    return c;
}

/// Independent validity test used to label mutations: every term a sum of two earlier ones.
bool naive_valid(const std::vector<u64>& c)
{
    if (c.empty() || c[0] != 1)
        return false;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (c[k] <= c[k - 1])
            return false;
        bool ok = false;
        for (std::size_t i = 0; i < k && !ok; ++i)
            for (std::size_t j = i; j < k && !ok; ++j)
                ok = c[i] + c[j] == c[k];
        if (!ok)
            return false;
    }
    return true;
}

Report cmd_addchain(const std::vector<i64>& a, const Settings& s, bool verify_flag, unsigned fuzz)
{
    Report r;
    r.command = "addchain";
    std::vector<u64> ns;
    if (a.size() == 1) {
        ns.push_back(static_cast<u64>(std::max<i64>(a[0], 0)));
        r.parameters["n"] = a[0];
    } else {
        auto [lo, hi] = span(s, 1, 64);
        put_span(r, s, lo, hi);
        for (i64 n = std::max<i64>(lo, 1); n <= hi; ++n)
            ns.push_back(static_cast<u64>(n));
    }
    r.parameters["bound"] = s.bounds.addchain;
    r.parameters["verify"] = verify_flag;
    if (fuzz) {
        r.parameters["fuzz"] = fuzz;
        r.parameters["seed"] = s.seed;
    }
    r.items = scan(ns, s, [&](u64 n) {
        return guarded(json{{"n", n}}, [&] {
            auto c = addchain::optimal_chain(n, s.bounds.addchain);
            Item it;
            it.record = json{{"n", n}, {"length", c.length}, {"chain", chain_json(c.chain.terms)}};
            bool ok = addchain::verify(c.chain.terms, n);
            if (verify_flag)
                it.record["verified"] = ok;
            if (!ok)
                it.violation = "invalid chain for n = " + std::to_string(n);
            else if (c.length > addchain::binary_length(n))
                it.violation = "length above the binary method for n = " + std::to_string(n);
            if (fuzz) {
                std::mt19937_64 rng(s.seed ^ (n * 0x9E3779B97F4A7C15ull));
                unsigned invalid = 0, accepted = 0;
                for (unsigned t = 0; t < fuzz; ++t) {
                    auto m = mutate(c.chain.terms, rng);
                    if (naive_valid(m))
                        continue;
                    ++invalid;
                    if (addchain::verify(m))
                        ++accepted;
                }
                it.record["fuzz_invalid"] = invalid;
                it.record["fuzz_accepted_invalid"] = accepted;
                if (accepted)
                    it.violation = "verifier accepted an invalid mutation for n = " + std::to_string(n);
            }
            return it;
        });
    });
    return r;
}

Report cmd_scholz_brauer(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "scholz-brauer";
    std::vector<unsigned> ns;
    if (a.size() == 1) {
        ns.push_back(static_cast<unsigned>(std::max<i64>(a[0], 0)));
        r.parameters["n"] = a[0];
    } else {
        auto [lo, hi] = span(s, 1, 8);
        put_span(r, s, lo, hi);
        for (i64 n = std::max<i64>(lo, 1); n <= hi; ++n)
            ns.push_back(static_cast<unsigned>(n));
    }
    r.items = scan(ns, s, [&](unsigned n) {
        return guarded(json{{"n", n}}, [&] {
            auto b = addchain::scholz_brauer_check(n);
            Item it;
            it.record = json{{"n", b.n}, {"l_n", b.l_n}, {"l_mersenne", b.l_mersenne}, {"bound", b.bound},
                             {"holds", b.holds}};
            if (!b.holds)
                it.violation = "l(2^n - 1) > n - 1 + l(n) at n = " + std::to_string(n);
            return it;
        });
    });
    return r;
}

// ---------------------------------------------------------------- discbounds

json ld(long double x)
{
    std::ostringstream o;
    o << std::setprecision(15) << static_cast<double>(x);
    return json::parse(o.str());
}

Report cmd_rd(const std::vector<i64>& a, const Settings& s, bool minkowski)
{
    Report r;
    r.command = "rd";
    r.parameters["family"] = minkowski ? "minkowski" : "cyclotomic";
    if (minkowski) {
        std::vector<std::pair<unsigned, unsigned>> in;
        if (!a.empty()) {
            unsigned n = static_cast<unsigned>(a[0]);
            r.parameters["n"] = a[0];
            if (a.size() == 2) {
                in.emplace_back(n, static_cast<unsigned>(a[1]));
                r.parameters["r2"] = a[1];
            } else
                for (unsigned k = 0; 2 * k <= n; ++k)
                    in.emplace_back(n, k);
        } else {
            auto [lo, hi] = span(s, 1, 20);
            put_span(r, s, lo, hi);
            for (i64 n = std::max<i64>(lo, 1); n <= hi; ++n)
                for (unsigned k = 0; 2 * k <= n; ++k)
                    in.emplace_back(static_cast<unsigned>(n), k);
        }
        r.items = scan(in, s, [&](std::pair<unsigned, unsigned> nk) {
            return guarded(json{{"n", nk.first}, {"r2", nk.second}}, [&] {
                auto b = discbounds::minkowski_rd_bound(nk.first, nk.second);
                Item it;
                it.record = json{{"n", b.n},
                                 {"r2", b.r2},
                                 {"ratio", b.ratio.get_str()},
                                 {"disc_bound", ld(b.disc_bound)},
                                 {"rd_bound", ld(b.rd_bound)}};
                return it;
            });
        });
        return r;
    }
    std::vector<u64> ps;
    if (!a.empty()) {
        ps.push_back(static_cast<u64>(a[0]));
        r.parameters["p"] = a[0];
    } else {
        auto [lo, hi] = span(s, 3, 23);
        put_span(r, s, lo, hi);
        for (u64 p : primes_in(lo, hi))
            if (p > 2)
                ps.push_back(p);
    }
    r.items = scan(ps, s, [&](u64 p) {
        return guarded(json{{"p", p}}, [&] {
            auto rec = discbounds::cyclotomic_rd(p);
            Item it;
            bool ok = discbounds::consistent(rec);
            it.record = json{{"p", p},
                             {"family", discbounds::to_string(rec.family)},
                             {"degree", rec.degree},
                             {"disc", num(rec.disc)},
                             {"rd", ld(rec.rd)},
                             {"digits", rec.digits},
                             {"consistent", ok}};
            if (!ok)
                it.violation = "rd^n != |disc| for p = " + std::to_string(p);
            return it;
        });
    });
    return r;
}

Report cmd_mindisc(const std::vector<i64>& a, const Settings& s, i64 limit)
{
    Report r;
    r.command = "mindisc";
    r.parameters["degree"] = a[0];
    r.parameters["limit"] = limit;
    std::vector<int> one{0};
    r.items = scan(one, s, [&](int) {
        auto m = discbounds::minimal_disc_scan(static_cast<unsigned>(a[0]), limit);
        Item it;
        it.record = json{{"degree", m.degree}, {"min_disc", m.minimum.disc}, {"witness", m.minimum.field}};
        if (m.degree == 2) {
            it.record["min_real_disc"] = m.minimum_real.disc;
            it.record["min_real_witness"] = m.minimum_real.field;
            it.record["second_real_disc"] = m.second_real.disc;
            it.record["second_real_witness"] = m.second_real.field;
        } else {
            it.record["discs_found"] = m.discs_found;
            it.record["polynomials_tested"] = m.polynomials_tested;
        }
        auto mk = discbounds::minkowski_rd_bound(m.degree, m.minimum.disc < 0 ? 1 : 0);
        if (std::fabs(static_cast<long double>(m.minimum.disc)) < mk.disc_bound)
            it.violation = "minimum below the Minkowski bound";
        return it;
    });
    return r;
}

Report cmd_perron(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "perron";
    i64 nmax = a.empty() ? s.max.value_or(12) : a[0];
    r.parameters["n_max"] = nmax;
    if (nmax < 2 || nmax > 64)
        throw UsageError("perron: n_max must be in 2..64");
    std::vector<unsigned> ns;
    for (i64 n = 2; n <= nmax; ++n)
        ns.push_back(static_cast<unsigned>(n));
    r.items = scan(ns, s, [&](unsigned n) {
        auto pr = discbounds::perron_record(n);
        Item it;
        it.record = json{{"n", n},
                         {"disc", num(pr.record.disc)},
                         {"rd", ld(pr.record.rd)},
                         {"formula_holds", pr.formula_holds},
                         {"below_2n", pr.below_2n}};
        if (!pr.formula_holds || !pr.below_2n)
            it.violation = "perron check fails at n = " + std::to_string(n);
        return it;
    });
    return r;
}

Report cmd_wieferich(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "wieferich";
    i64 bound = a.empty() ? s.max.value_or(2000) : a[0];
    if (bound < 0)
        throw UsageError("wieferich: bound must be nonnegative");
    r.parameters["bound"] = bound;
    std::vector<int> one{0};
    auto found = discbounds::wieferich_scan(static_cast<u64>(bound));
    for (u64 p : found) {
        Item it;
        it.record = json{{"p", p}, {"modulus", p * p}};
        r.items.push_back(it);
    }
    (void)s;
    return r;
}

Report cmd_count_v4(const std::vector<i64>& a, const Settings& s)
{
    Report r;
    r.command = "count-v4";
    i64 X = a.empty() ? s.max.value_or(1'000'000'000) : a[0];
    if (X < 1)
        throw UsageError("count-v4: X must be positive");
    r.parameters["X"] = X;
    auto c = discbounds::v4_count(static_cast<u64>(X));
    for (auto& [x, n] : c.grid) {
        Item it;
        it.record = json{{"X", x}, {"count", n}};
        r.items.push_back(it);
    }
    Item fin;
    fin.record = json{{"X", c.X}, {"count", c.count}, {"slope", c.slope}};
    r.items.push_back(fin);
    (void)s;
    return r;
}

// ---------------------------------------------------------------- output

std::string cell(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void write_rows(std::ostream& out, const std::vector<Item>& items, bool aligned)
{
    std::vector<std::string> cols;
    for (auto& it : items)
        for (auto& [k, v] : it.record.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end())
                cols.push_back(k);
    std::vector<std::vector<std::string>> rows;
    for (auto& it : items) {
        std::vector<std::string> row;
        for (auto& c : cols)
            row.push_back(it.record.contains(c) ? cell(it.record[c]) : "");
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> w(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        w[i] = cols[i].size();
        for (auto& row : rows)
            w[i] = std::max(w[i], row[i].size());
    }
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (aligned) {
                out << (i ? "  " : "") << row[i];
                if (i + 1 < row.size())
                    out << std::string(w[i] - row[i].size(), ' ');
            } else
                out << (i ? "\t" : "") << row[i];
        }
        out << '\n';
    };
    if (!cols.empty())
        line(cols);
    for (auto& row : rows)
        line(row);
}

int emit(std::ostream& out, std::ostream& err, const Report& r, const Settings& s, long long elapsed_ms)
{
    json summary;
    summary["type"] = "summary";
    summary["command"] = r.command;
    summary["parameters"] = r.parameters;
    json violations = json::array();
    std::size_t skipped = 0;
    for (auto& it : r.items) {
        if (it.violation)
            violations.push_back(*it.violation);
        skipped += it.skipped;
    }
    summary["total"] = r.items.size();
    summary["skipped"] = skipped;
    summary["violations"] = violations;
    summary["schema_version"] = schema_version;
    if (s.timing)
        summary["elapsed_ms"] = elapsed_ms;

    switch (s.format) {
    case Format::Json:
        for (auto& it : r.items)
            out << it.record.dump() << '\n';
        out << summary.dump() << '\n';
        break;
    case Format::Table:
    case Format::Tsv:
        write_rows(out, r.items, s.format == Format::Table);
        out << "# " << r.command << ": total " << r.items.size() << ", skipped " << skipped << ", violations "
            << violations.size() << (s.timing ? ", elapsed_ms " + std::to_string(elapsed_ms) : "") << '\n';
        for (auto& v : violations)
            out << "# violation: " << v.get<std::string>() << '\n';
        break;
    }
    bool single = !r.parameters.contains("range");
    for (auto& it : r.items)
        if (single && r.items.size() == 1 && it.record.contains("error")) {
            auto code = it.record["error"].get<std::string>();
            for (auto c : {ErrorCode::Precondition, ErrorCode::NotPrime, ErrorCode::Usage, ErrorCode::Nonresidue,
                           ErrorCode::PerfectSquare, ErrorCode::NotSplit})
                if (code == to_string(c)) {
                    err << r.command << ": " << it.record["message"].get<std::string>() << '\n';
                    return 2;
                }
        }
    if (!violations.empty())
        err << r.command << ": " << violations.size() << " violation(s)\n";
    return violations.empty() ? 0 : 1;
}

void load_config(const std::string& path, Bounds& b, std::ostream& err)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("--config: cannot open '" + path + "'");
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw UsageError("--config: " + std::string(e.what()));
    }
    if (!cfg.is_object())
        throw UsageError("--config: top level must be an object");
    for (auto& [k, v] : cfg.items()) {
        if (!v.is_number_integer()) {
            err << "config: ignoring non-integer key '" << k << "'\n";
            continue;
        }
        if (k == "scan_budget")
            b.d4_search = b.pq_search = b.primary_search = v.get<u64>();
        else if (k == "d4_search_bound")
            b.d4_search = v.get<u64>();
        else if (k == "pq_search_bound")
            b.pq_search = v.get<u64>();
        else if (k == "primary_search_bound")
            b.primary_search = v.get<u64>();
        else if (k == "unit_height_bound")
            b.unit_height = v.get<i64>();
        else if (k == "class_group_bound")
            b.class_group = v.get<i64>();
        else if (k == "addchain_bound")
            b.addchain = v.get<u64>();
        // unknown keys are ignored
    }
}

bool usage_code(ErrorCode c)
{
    return c == ErrorCode::Precondition || c == ErrorCode::NotPrime || c == ErrorCode::Usage ||
           c == ErrorCode::Nonresidue || c == ErrorCode::PerfectSquare || c == ErrorCode::NotSplit;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"scholz: verification scans for class groups, residue symbols, addition chains and "
                 "discriminant bounds"};
    app.name("scholz");
    app.require_subcommand(1, 1);

    Settings s;
    bool fjson = false, ftable = false, ftsv = false;
    std::string range, config;
    i64 max = 0;
    app.add_option("--max", max, "upper end of the scan (lower end per command)");
    app.add_option("--range", range, "scan range a..b");
    app.add_option("--jobs", s.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    auto* oj = app.add_flag("--json", fjson, "JSON lines (default)");
    auto* ot = app.add_flag("--table", ftable, "aligned table");
    auto* os = app.add_flag("--tsv", ftsv, "tab separated");
    oj->excludes(ot)->excludes(os);
    ot->excludes(os);
    app.add_flag("--fail-fast", s.fail_fast, "stop after the first violation");
    app.add_option("--seed", s.seed, "seed for randomized harnesses (fuzzing)");
    app.add_option("--config", config, "JSON file overriding search bounds");
    app.add_flag("--timing", s.timing, "add elapsed_ms to the summary");

    std::map<std::string, std::vector<std::string>> pos;
    std::map<std::string, CLI::App*> sub;
    auto add = [&](const std::string& name, const std::string& help, const std::string& argspec) {
        auto* c = app.add_subcommand(name, help);
        c->fallthrough();
        c->add_option("args", pos[name], argspec);
        sub[name] = c;
        return c;
    };
    add("reciprocity", "Scholz reciprocity (eps_p/q) = (p/q)_4 (q/p)_4", "[p q]");
    add("pell", "negative Pell classification of d = pq", "[p q]");
    add("reflect", "3-ranks of Q(sqrt m) and Q(sqrt -3m)", "[m]");
    add("knot", "unit, number and ideal knots of Q(sqrt p, sqrt q)", "[p q]");
    bool narrow = false, second = false;
    auto* rc = add("rayclass", "ray class number modulo a prime above p", "d p");
    rc->add_flag("--narrow", narrow, "allow sign conditions at the real places");
    rc->add_flag("--second", second, "use the conjugate prime ideal");
    add("primary2", "2-primary test for primes of an imaginary quadratic field", "d [p]");
    add("cubicsym", "cubic characters and symbolic levels of the units of K_q", "q [p]");
    add("recip3", "ell = 3 reciprocity for mutually split pairs", "[p q]");
    add("plan-d4", "D4 construction certificate", "[p]");
    add("plan-pq", "order-pq construction certificate (p in {2, 3})", "p q");
    add("cubic-from-unit", "cubic polynomial from the fundamental unit of Q(sqrt 3m)", "[m]");
    bool verify = false;
    unsigned fuzz = 0;
    auto* ac = add("addchain", "optimal addition chains", "[n]");
    ac->add_flag("--verify", verify, "report the verifier result");
    ac->add_option("--fuzz", fuzz, "mutation trials per chain (uses --seed)");
    add("scholz-brauer", "l(2^n - 1) <= n - 1 + l(n)", "[n]");
    bool minkowski = false;
    auto* rdc = add("rd", "root discriminants of Q(zeta_p), or Minkowski bounds", "[p] | --minkowski [n [r2]]");
    rdc->add_flag("--minkowski", minkowski, "Minkowski lower bounds instead");
    i64 limit = 30;
    auto* md = add("mindisc", "minimal discriminant scan (degree 2 or 3)", "degree");
    md->add_option("--limit", limit, "cubic scan: largest |disc|");
    add("perron", "disc(x^n - 2) and |disc|^(1/n) < 2n", "[n_max]");
    add("wieferich", "primes with 2^(p-1) = 1 mod p^2", "[bound]");
    add("count-v4", "count V4 fields and the log-log slope", "[X]");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    if (ftable)
        s.format = Format::Table;
    else if (ftsv)
        s.format = Format::Tsv;

    auto t0 = std::chrono::steady_clock::now();
    std::string name = app.get_subcommands().front()->get_name();
    try {
        if (const char* env = std::getenv(budget_env)) {
            try {
                u64 b = std::stoull(env);
                s.bounds.d4_search = s.bounds.pq_search = s.bounds.primary_search = b;
            } catch (const std::exception&) {
                throw UsageError(std::string(budget_env) + ": not an integer");
            }
        }
        if (!config.empty())
            load_config(config, s.bounds, err);
        if (app.count("--max"))
            s.max = max;
        if (!range.empty())
            s.range = parse_range(range);

        auto& a = pos[name];
        Report r;
        if (name == "reciprocity")
            r = cmd_reciprocity(positionals(a, 0, 2, name), s);
        else if (name == "pell")
            r = cmd_pell(positionals(a, 0, 2, name), s);
        else if (name == "reflect")
            r = cmd_reflect(positionals(a, 0, 1, name), s, err);
        else if (name == "knot")
            r = cmd_knot(positionals(a, 0, 2, name), s);
        else if (name == "rayclass")
            r = cmd_rayclass(positionals(a, 2, 2, name), s, narrow, second);
        else if (name == "primary2")
            r = cmd_primary2(positionals(a, 1, 2, name), s);
        else if (name == "cubicsym")
            r = cmd_cubicsym(positionals(a, 1, 2, name), s);
        else if (name == "recip3")
            r = cmd_recip3(positionals(a, 0, 2, name), s);
        else if (name == "plan-d4")
            r = cmd_plan_d4(positionals(a, 0, 1, name), s);
        else if (name == "plan-pq")
            r = cmd_plan_pq(positionals(a, 2, 2, name), s);
        else if (name == "cubic-from-unit")
            r = cmd_cubic_from_unit(positionals(a, 0, 1, name), s);
        else if (name == "addchain")
            r = cmd_addchain(positionals(a, 0, 1, name), s, verify, fuzz);
        else if (name == "scholz-brauer")
            r = cmd_scholz_brauer(positionals(a, 0, 1, name), s);
        else if (name == "rd")
            r = cmd_rd(positionals(a, 0, minkowski ? 2 : 1, name), s, minkowski);
        else if (name == "mindisc")
            r = cmd_mindisc(positionals(a, 1, 1, name), s, limit);
        else if (name == "perron")
            r = cmd_perron(positionals(a, 0, 1, name), s);
        else if (name == "wieferich")
            r = cmd_wieferich(positionals(a, 0, 1, name), s);
        else if (name == "count-v4")
            r = cmd_count_v4(positionals(a, 0, 1, name), s);
        if (s.fail_fast)
            r.parameters["fail_fast"] = true;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        return emit(out, err, r, s, ms);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        json rec{{"command", name}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        out << rec.dump() << '\n';
        err << name << ": " << to_string(e.code()) << ": " << e.what() << '\n';
        return usage_code(e.code()) ? 2 : 1;
    }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace scholz::cli
