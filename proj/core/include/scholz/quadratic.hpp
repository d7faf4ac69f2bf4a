#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "scholz/arith.hpp"
#include "scholz/group.hpp"

namespace scholz::quad {

using arith::i64;
using arith::u64;

/// Discriminant of a quadratic field.
class FundamentalDiscriminant {
public:
    /// Validates d; throws Precondition if d is not a field discriminant.
    explicit FundamentalDiscriminant(i64 d);

    i64 value() const { return d_; }
    /// m with K = Q(sqrt m), squarefree.
    i64 radicand() const { return d_ % 4 == 0 ? d_ / 4 : d_; }
    bool real() const { return d_ > 0; }
    bool operator==(const FundamentalDiscriminant&) const = default;

private:
    i64 d_;
};

bool is_fundamental_discriminant(i64 d);

/// Discriminant of Q(sqrt m).  Errors: PerfectSquare.
FundamentalDiscriminant fundamental_discriminant(i64 m);

/// eps = (t + u sqrt d)/2 > 1, the fundamental unit.
struct QuadUnit {
    mpz_class t;
    mpz_class u;
    int norm = 1;
    i64 d = 0;
    std::size_t period = 0; ///< length of the continued-fraction period used
};

QuadUnit fundamental_unit(FundamentalDiscriminant d);

struct Form {
    i64 a = 0, b = 0, c = 0;
    bool operator==(const Form&) const = default;
    i64 discriminant() const { return b * b - 4 * a * c; }
};

struct FormHash {
    std::size_t operator()(const Form& f) const noexcept
    {
        std::uint64_t h = static_cast<std::uint64_t>(f.a) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(f.b) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(f.c) + 0x2545F4914F6CDD1Dull + (h << 6) + (h >> 2);
        return h;
    }
};

bool is_reduced(const Form& f);
/// Reduced form properly equivalent to f (imaginary: the unique one; real: first reduced form on the rho path).
Form reduce(const Form& f);
/// The rho step on indefinite forms.
Form rho(const Form& f, i64 isqrt_d);
Form compose(const Form& f, const Form& g);
Form principal_form(i64 d);

/// Form class group of a fundamental discriminant.  For d > 0 the classes are
/// proper-equivalence classes (narrow); the wide group is obtained as a quotient.
class FormClassGroup {
public:
    FormClassGroup(FundamentalDiscriminant d, i64 bound = 100'000'000);

    FundamentalDiscriminant discriminant() const { return d_; }
    std::size_t size() const { return reps_.size(); }
    std::size_t identity() const { return identity_; }
    const Form& rep(std::size_t i) const { return reps_[i]; }
    /// Class of an arbitrary primitive form of this discriminant.
    std::size_t class_of(const Form& f) const;
    std::size_t mul(std::size_t i, std::size_t j) const;
    std::size_t inverse(std::size_t i) const;
    FiniteAbelianGroup as_group() const;
    /// For d > 0: class of a form representing -1.  Identity iff N(eps) = -1.
    std::size_t minus_one_class() const;

private:
    FundamentalDiscriminant d_;
    i64 s_ = 0;
    std::vector<Form> reps_;
    std::unordered_map<Form, std::size_t, FormHash> lookup_;
    std::size_t identity_ = 0;
};

/// Wide class group of a real field: narrow group modulo the class of -1.
struct WideQuotient {
    std::vector<std::size_t> narrow_rep;      ///< wide index -> narrow class
    std::vector<std::size_t> wide_of_narrow;  ///< narrow class -> wide index
};
WideQuotient wide_quotient(const FormClassGroup& g);

struct ClassGroupStructure {
    i64 d = 0;
    bool narrow = false;
    u64 order = 1;
    std::vector<u64> elementary_divisors; ///< n1 | n2 | ...
    std::vector<Form> generators;
};

ClassGroupStructure class_group(FundamentalDiscriminant d, bool narrow, i64 bound = 100'000'000);
unsigned p_rank(FundamentalDiscriminant d, u64 p, bool narrow, i64 bound = 100'000'000);
u64 class_number(FundamentalDiscriminant d, bool narrow = false, i64 bound = 100'000'000);

/// Product eps_p^a eps_q^b eps_pq^c in L = Q(sqrt p, sqrt q).
struct BiquadraticUnit {
    unsigned a = 0, b = 0, c = 0;
};

struct SquarenessResult {
    bool square = false;
    bool totally_positive = false;
    /// Square root coordinates in the basis 1, sqrt p, sqrt q, sqrt pq when square.
    std::vector<mpq_class> root;
};

/// Exact decision whether the unit is a square in Q(sqrt p, sqrt q).
SquarenessResult is_square_in_biquadratic(u64 p, u64 q, BiquadraticUnit gamma);

} // namespace scholz::quad
