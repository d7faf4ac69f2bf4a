#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scholz/quadratic.hpp"
#include "scholz/sign.hpp"

namespace scholz::ell2 {

using arith::i64;
using arith::u64;

struct ReciprocityReport {
    u64 p = 0, q = 0;
    Sign lhs, rhs;          ///< (eps_p/q) and (p/q)_4 (q/p)_4
    Sign lhs_swapped;       ///< (eps_q/p)
    bool equal = false;     ///< lhs == rhs and lhs_swapped == rhs
};

ReciprocityReport scholz_reciprocity_check(u64 p, u64 q);

enum class PellCase { One = 1, Two = 2, Three = 3, Cyclic8Plus = 4 };
enum class GroupLabel { C2, C4, Cyclic8Divides, Unspecified, Other };

std::string to_string(PellCase c);
std::string to_string(GroupLabel g);

struct PellClassification {
    u64 p = 0, q = 0;
    PellCase pell_case = PellCase::One;
    std::optional<int> predicted_norm; ///< empty for Cyclic8Plus
    GroupLabel predicted_cl2 = GroupLabel::Unspecified;
    GroupLabel predicted_cl2_plus = GroupLabel::Unspecified;
    int legendre = 0;
    std::optional<Sign> quartic_pq, quartic_qp;
};

PellClassification negative_pell_classify(u64 p, u64 q);

/// Ground truth for d = pq from the continued fraction and the form class group.
struct PellGroundTruth {
    int norm = 0;
    std::vector<u64> cl2;       ///< 2-parts of the wide invariant factors (nontrivial only)
    std::vector<u64> cl2_plus;  ///< same for the narrow group
    GroupLabel cl2_label = GroupLabel::Other;
    GroupLabel cl2_plus_label = GroupLabel::Other;
};

PellGroundTruth pell_ground_truth(u64 p, u64 q, i64 bound = 100'000'000);
/// Empty when the prediction agrees with the ground truth, otherwise the mismatch.
std::optional<std::string> pell_mismatch(const PellClassification& c, const PellGroundTruth& t);

struct KnotReport {
    u64 p = 0, q = 0;
    int unit_knot_order = 1;
    std::string unit_knot_reason;
    bool redei = false;
    bool number_knot_nontrivial = false;
    int number_knot_order = 1;
    int ideal_knot_order = 1; ///< number / unit
};

KnotReport knot_report(u64 p, u64 q);

struct ReflectionReport {
    i64 m = 0, partner = 0;
    i64 d_plus = 0, d_minus = 0;
    unsigned r_plus = 0, r_minus = 0;
    bool ok = false;
};

/// Partner radicand: squarefree kernel of -3m.
i64 reflection_partner(i64 m);
/// Errors: Precondition for non-squarefree m or m in {0, 1}; Inapplicable for m = +-3
/// (the partner is Q(sqrt -1) or Q itself); BoundExceeded.
ReflectionReport reflection_check(i64 m, i64 bound = 100'000'000);

enum class WhichIdeal { First, Second };

struct RayClassNumber {
    u64 value = 0;
    u64 class_number = 0;
    u64 phi = 0;
    u64 unit_index = 0; ///< (E : E^(1)), or the signed index in the narrow case
    bool narrow = false;
};

/// Ray class number modulo a degree-one prime above p.  The narrow variant
/// also allows sign conditions at both real places (d > 0 only).
RayClassNumber ray_class_number(quad::FundamentalDiscriminant d, u64 p, WhichIdeal which = WhichIdeal::First,
                                bool narrow = false, i64 bound = 100'000'000);

/// (x + y sqrt d)/2.
struct QuadElement {
    mpz_class x, y;
};

struct SingularGenerator {
    std::string label;         ///< "-1", "i" or "omega"
    QuadElement element;
    quad::Form ideal_class;    ///< class of the order-two ideal (principal form for units)
    u64 auxiliary_prime = 0;   ///< norm of the ideal whose square is (omega)
    u64 residue = 0;           ///< image mod the prime ideal
    Sign character;
};

struct PrimaryPrimeWitness {
    i64 d = 0;
    u64 prime_norm = 0;
    u64 sqrt_radicand = 0;                  ///< r with r^2 = m mod p selecting the prime ideal
    quad::Form prime_ideal;                 ///< [p, (-b + sqrt d)/2]
    std::optional<QuadElement> prime_generator;
    std::vector<SingularGenerator> singular_basis;
    bool p_1_mod_4 = false;
    bool primary = false;
};

/// Errors: NotSplit, Precondition, BoundExceeded (no auxiliary prime below search_bound).
PrimaryPrimeWitness is_2_primary(quad::FundamentalDiscriminant d, u64 p, u64 search_bound = 1'000'000,
                                 i64 bound = 100'000'000);

} // namespace scholz::ell2
