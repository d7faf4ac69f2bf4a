#pragma once

#include <cstdint>
#include <ostream>

#include "scholz/error.hpp"

namespace scholz {

/// A value in {+1, -1}.  Kept apart from plain integers so residues mod q
/// cannot leak into symbol arithmetic.
class Sign {
public:
    constexpr Sign() = default;
    static constexpr Sign plus() { return Sign(false); }
    static constexpr Sign minus() { return Sign(true); }
    static Sign from_int(long v)
    {
        require(v == 1 || v == -1, ErrorCode::ConsistencyFailure, "sign must be +1 or -1");
        return Sign(v < 0);
    }

    constexpr bool is_plus() const { return !neg_; }
    constexpr bool is_minus() const { return neg_; }
    constexpr int value() const { return neg_ ? -1 : 1; }

    constexpr Sign operator*(Sign o) const { return Sign(neg_ != o.neg_); }
    constexpr Sign operator-() const { return Sign(!neg_); }
    constexpr bool operator==(const Sign&) const = default;

private:
    constexpr explicit Sign(bool neg) : neg_(neg) {}
    bool neg_ = false;
};

inline std::ostream& operator<<(std::ostream& os, Sign s) { return os << (s.is_plus() ? "+1" : "-1"); }

} // namespace scholz
