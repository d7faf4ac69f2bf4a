#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "scholz/arith.hpp"
#include "scholz/poly.hpp"

namespace scholz::construct {

using arith::i64;
using arith::u64;

enum class TargetGroup { D4ViaC4, D4ViaC2WrC2, PqMetacyclic, UnramifiedCubic };
std::string to_string(TargetGroup g);

struct Condition {
    std::string name;
    bool holds = false;
    std::string witness;
};

struct ConstructionCertificate {
    TargetGroup target = TargetGroup::D4ViaC4;
    std::vector<std::pair<std::string, std::string>> base_data; ///< ordered key/value pairs
    std::vector<Condition> conditions;                          ///< fixed order per target
    bool complete = false;
    std::vector<ConstructionCertificate> alternatives;
};

/// Stable JSON rendering: keys "schema", "target", "base_data", "conditions",
/// "complete", "alternatives" in that order.
std::string to_json(const ConstructionCertificate& c);

/// Smallest prime q with q = 1 mod 4, (p/q) = +1, (eps_p/q) = +1.
/// Errors: Precondition (p != 1 mod 4), NotPrime, BoundExceeded.
ConstructionCertificate d4_plan(u64 p, u64 search_bound = 1'000'000);

/// Order-pq construction data for p in {2, 3}.
/// Errors: Precondition (unsupported p, q != 1 mod p), BoundExceeded, NotSaturated.
ConstructionCertificate pq_plan(u64 p, u64 q, u64 search_bound = 10'000'000, i64 unit_height_bound = 50);

struct CubicFromUnit {
    i64 m = 0;
    i64 d = 0;                ///< discriminant of Q(sqrt 3m)
    mpz_class t, u;           ///< eps = (t + u sqrt d)/2, trace t
    poly::ZPoly poly;         ///< x^3 - 3x - t
    mpz_class disc;
    arith::Factorization disc_factorization;
    i64 fd_minus_m = 0;       ///< discriminant of Q(sqrt -m)
    mpz_class cofactor;       ///< f0 with disc = fd_minus_m * f0^2 (0 when not a square)
    bool irreducible = false;
    bool square_cofactor = false;
    unsigned index_v3 = 0;    ///< 3-adic valuation of [O_K : Z[alpha]]
    unsigned cofactor_v3 = 0;
    bool unramified_claim = false;
    std::optional<i64> companion_a;      ///< a with a^3 = 27m - 1
    std::optional<mpz_class> companion_disc; ///< -4a^3 - 27 b^2 with b^2 = -4m
    ConstructionCertificate certificate;
};

/// Errors: Precondition (m not squarefree, 3 | m, m < 1), Inapplicable (N eps = -1),
/// Degenerate (g reducible).
CubicFromUnit cubic_from_unit(i64 m);

} // namespace scholz::construct
