#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mpdre {

// Base class for every failure this library reports. Each concrete type maps
// to one named failure mode of the operations that can raise it.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite entries handed to a matrix constructor.
struct InvalidMatrix : Error {
    using Error::Error;
};

// Matrix too close to singular for a requested inverse.
struct SingularPivot : Error {
    using Error::Error;
};

// Problem document parsed but violates a structural requirement
// (gamma <= 0, Phi not positive definite, inconsistent dimensions).
struct InvalidProblem : Error {
    using Error::Error;
};

// Malformed input document: bad JSON, wrong shapes, unknown keys.
struct ParseError : Error {
    using Error::Error;
};

// Riccati pivot gamma^2 I - B^T P B lost positive definiteness.
struct PivotLost : Error {
    PivotLost(const std::string& msg, double margin, int step = -1)
        : Error(msg), margin(margin), step(step) {}
    double margin;  // smallest eigenvalue of the failing pivot
    int step;       // iteration index when raised from an iteration, else -1
};

// One-step DP operator applied to a quadratic whose supremum is +infinity.
struct ValueExplosion : Error {
    using Error::Error;
};

// Argument outside the domain of a duality or block transform; `stage`
// identifies which constituent of a composed transform rejected it.
struct DomainViolation : Error {
    DomainViolation(const std::string& msg, std::string stage = {})
        : Error(msg), stage(std::move(stage)) {}
    std::string stage;
};

// The inner block sum of a circled-star product failed to be negative
// definite, so the max-plus convolution behind it is unbounded.
struct PivotIndefinite : Error {
    PivotIndefinite(const std::string& msg, double max_eigenvalue)
        : Error(msg), max_eigenvalue(max_eigenvalue) {}
    double max_eigenvalue;
    std::optional<std::pair<int, int>> failing_pair;  // (k1, k2) when known
};

// Schur-complement solution map applied where the DRE solution does not
// exist (the existence pivot is not negative definite).
struct ExistenceViolated : Error {
    ExistenceViolated(const std::string& msg, double max_eigenvalue)
        : Error(msg), max_eigenvalue(max_eigenvalue) {}
    double max_eigenvalue;
};

// Grid maximizer landed on the search-box boundary; the supplied box does
// not contain the maximizer (or the objective is unbounded).
struct SearchBoxTooSmall : Error {
    using Error::Error;
};

}  // namespace mpdre
