#pragma once

#include <stdexcept>
#include <string>

namespace farey {

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotInRange : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotInDomain : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotInStarSet : std::domain_error {
    using std::domain_error::domain_error;
};

struct EmptyMeasure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoDominantEigen : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateRegion : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when an enumeration would exceed a caller-supplied cardinality cap.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace farey
