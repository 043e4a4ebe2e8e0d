#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace coarse {

enum class IssueCode {
    NotFinite,
    NotSquare,
    NotSymmetric,
    ZeroOffDiagonal,
    TriangleViolation,
    NonPositiveCross,
    MixedTriangleViolation,
    EmptySubset,
    BaseMismatch,
    DistortionExceedsC,
    ValidationFailed,
    GridEmpty,
    LevelsTooFew,
    NotSelfadjoint,
    NearConditionViolated,
    WitnessInvalid,
    RadiusTooLarge,
    TooManyPoints,
    IndexTooLarge,
    UnknownExperiment,
    ParamOutOfRange,
    UnsupportedFormat,
    UsageError,
    FileNotFound,
    ParseError,
};

const char* issue_code_name(IssueCode c);

// One validation/usage problem. `indices` and `slack` are meaningful for the
// matrix checks (first offending triple/pair, amount by which the inequality
// failed); `kind` distinguishes the four mixed-triangle families.
struct Issue {
    IssueCode code = IssueCode::ValidationFailed;
    std::array<int, 3> indices{-1, -1, -1};
    double slack = 0.0;
    int kind = 0;
    std::string detail;

    std::string str() const;
};

class CoarseError : public std::runtime_error {
  public:
    explicit CoarseError(Issue is) : std::runtime_error(is.str()), issue_(std::move(is)) {}
    const Issue& issue() const { return issue_; }

  private:
    Issue issue_;
};

[[noreturn]] inline void raise(Issue is) { throw CoarseError(std::move(is)); }

[[noreturn]] inline void raise(IssueCode code, std::string detail) {
    Issue is;
    is.code = code;
    is.detail = std::move(detail);
    throw CoarseError(std::move(is));
}

} // namespace coarse
