#pragma once

#include <stdexcept>
#include <string>

namespace fnls {

// Precondition violations (bad parameter ranges, incompatible arguments).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed data: size mismatches, bad file headers, inconsistent grids.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative solver failed to reach tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time integration produced a non-finite state.
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature self-validation against the closed-form symbol failed.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fnls
