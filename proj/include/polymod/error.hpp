#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polymod {

enum class ErrorCode {
    BadInput,
    SumMismatch,
    NonPositive,
    PairSumTooLarge,
    NotAPermutation,
    OutOfRange,
    RejectionBudgetExceeded,
    DegenerateTriangle,
    FootOutsideBase,
    SignatureMismatch,
    NotTimelike,
    WrongSheet,
    NoIntersection,
    FacetsDisjoint,
    RouteDisagreement,
    NegativeRatio,
    SlideCollision,
    NotInTheta,
    InconsistentPair,
    PairingFailure,
    NotEqualWeight,
    UnknownFormat,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type. The code is
// stable and machine-readable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<int> indices = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          message_(message),
          indices_(std::move(indices)) {}

    ErrorCode code() const noexcept { return code_; }
    // what() without the code prefix.
    const std::string& message() const noexcept { return message_; }

    // Offending 1-based indices, when the failure points at specific marks
    // (e.g. the pair (i, j) of a PairSumTooLarge rejection).
    const std::vector<int>& indices() const noexcept { return indices_; }

private:
    ErrorCode code_;
    std::string message_;
    std::vector<int> indices_;
};

}  // namespace polymod
