#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scholz {

enum class ErrorCode {
    NotPrime,
    Nonresidue,
    PerfectSquare,
    BoundExceeded,
    FactorBudgetExceeded,
    NotSplit,
    Precondition,
    Inapplicable,
    Degenerate,
    InsufficientUnits,
    NotSaturated,
    ConsistencyFailure,
    Usage,
};

std::string_view to_string(ErrorCode c) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, ErrorCode c, const std::string& msg)
{
    if (!cond)
        throw Error(c, msg);
}

} // namespace scholz
