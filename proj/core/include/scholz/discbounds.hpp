#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "scholz/poly.hpp"

namespace scholz::discbounds {

using i64 = std::int64_t;
using u64 = std::uint64_t;

enum class Family { Cyclotomic, Perron, MinimalScan, V4 };
std::string to_string(Family f);

struct RootDiscriminantRecord {
    unsigned degree = 0;
    mpz_class disc;
    long double rd = 0; ///< |disc|^(1/degree)
    unsigned digits = 12;
    Family family = Family::Cyclotomic;
};

/// rd^degree agrees with |disc| to the record's digits.
bool consistent(const RootDiscriminantRecord& r);

struct MinkowskiBound {
    unsigned n = 0, r2 = 0;
    mpq_class ratio;            ///< n^n / n!, exact
    long double disc_bound = 0; ///< |d| >= ((pi/4)^r2 n^n/n!)^2
    long double rd_bound = 0;   ///< disc_bound^(1/n)
};

/// Errors: Precondition (2 r2 > n or n == 0).
MinkowskiBound minkowski_rd_bound(unsigned n, unsigned r2);

/// disc Q(zeta_p) = (-1)^((p-1)/2) p^(p-2).  Errors: Precondition (p not an odd prime).
RootDiscriminantRecord cyclotomic_rd(u64 p);

struct PerronRecord {
    RootDiscriminantRecord record; ///< disc(x^n - 2)
    bool formula_holds = false;    ///< |disc| == n^n 2^(n-1)
    bool below_2n = false;         ///< rd < 2n
};

/// disc(x^n - 2) for one n >= 2.
PerronRecord perron_record(unsigned n);
/// n = 2..n_max.  Errors: BoundExceeded (n_max > 64).
std::vector<PerronRecord> perron_scan(unsigned n_max);

/// Primes p <= bound with 2^(p-1) = 1 mod p^2.  Errors: BoundExceeded (bound > 10^6).
std::vector<u64> wieferich_scan(u64 bound);

struct FieldWitness {
    i64 disc = 0;
    std::string field;  ///< "Q(sqrt m)" or the defining cubic
    poly::ZPoly poly;   ///< cubic scans only
};

struct MinDiscResult {
    unsigned degree = 0;
    FieldWitness minimum;           ///< smallest |disc|
    FieldWitness minimum_real;      ///< degree 2: smallest real disc
    FieldWitness second_real;       ///< degree 2: smallest real disc after Q(sqrt 5)
    std::vector<i64> discs_found;   ///< degree 3: distinct field discriminants inside the Hunter box
    i64 disc_limit = 0;
    std::size_t polynomials_tested = 0;
};

/// Errors: Precondition (degree not 2 or 3).
MinDiscResult minimal_disc_scan(unsigned degree, i64 disc_limit = 30);

struct V4Field {
    i64 d1 = 0, d2 = 0, d3 = 0; ///< quadratic subfield discriminants, d1 < d2 < d3
    mpz_class disc;             ///< d1 d2 d3 (positive)
};

/// All V4 fields with disc <= X, sorted by (disc, d1, d2).  Errors: BoundExceeded (X > 10^7).
std::vector<V4Field> v4_fields(u64 X);

struct V4Count {
    u64 X = 0;
    u64 count = 0;
    std::vector<std::pair<u64, u64>> grid; ///< (X_i, N(X_i)) on quarter decades from X/1000
    double slope = 0;                      ///< least squares of log N vs log X over the grid
};

/// Errors: BoundExceeded (X > 10^10).
V4Count v4_count(u64 X);
/// N(V4, X) only.
u64 v4_count_only(u64 X);

} // namespace scholz::discbounds
