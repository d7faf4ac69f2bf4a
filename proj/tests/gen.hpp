// Tiny deterministic generators for the property tests.
#pragma once

#include <cstdint>
#include <random>

namespace gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) ///< inclusive
    {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(eng_);
    }
    std::int64_t signed_uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace gen
