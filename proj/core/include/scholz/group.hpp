#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace scholz {

/// A finite abelian group given by its element count, the index of the
/// identity and a multiplication on indices.
class FiniteAbelianGroup {
public:
    using Op = std::function<std::size_t(std::size_t, std::size_t)>;

    FiniteAbelianGroup(std::size_t n, std::size_t identity, Op mul);

    std::size_t size() const { return n_; }
    std::size_t identity() const { return e_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return mul_(a, b); }
    std::size_t pow(std::size_t a, std::uint64_t k) const;
    std::uint64_t order(std::size_t a) const;

    /// Invariant factors n1 | n2 | ... (ascending) with one generator each.
    struct Decomposition {
        std::vector<std::uint64_t> divisors;
        std::vector<std::size_t> generators;
    };
    Decomposition decompose() const;

    /// Elements x with x^m = 1.
    std::vector<std::size_t> torsion(std::uint64_t m) const;
    /// dim over F_p of G/G^p, obtained by counting p-torsion.
    unsigned p_rank(std::uint64_t p) const;

private:
    std::size_t n_;
    std::size_t e_;
    Op mul_;
};

} // namespace scholz
