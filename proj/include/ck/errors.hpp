#pragma once

#include <stdexcept>
#include <string>

namespace ck {

// Anything that is a property of the numbers handed in (bad orbit, point off
// the chart, pole hit). The CLI maps this whole family to exit code 2.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InfeasibleOrbit : DomainError {
    InfeasibleOrbit() : DomainError("infeasible orbit") {}
    explicit InfeasibleOrbit(const std::string& why) : DomainError("infeasible orbit: " + why) {}
};

struct BeyondAsymptote : DomainError {
    using DomainError::DomainError;
};

struct ChartOverflow : DomainError {
    using DomainError::DomainError;
};

struct NullInversion : DomainError {
    using DomainError::DomainError;
};

struct SingularFactor : DomainError {
    using DomainError::DomainError;
};

struct Unsupported : DomainError {
    using DomainError::DomainError;
};

struct OutOfRange : DomainError {
    using DomainError::DomainError;
};

struct StiffnessError : DomainError {
    using DomainError::DomainError;
};

struct InvariantViolation : DomainError {
    using DomainError::DomainError;
};

// Caller misuse (wrong combination of arguments), exit code 64 in the CLI.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace ck
