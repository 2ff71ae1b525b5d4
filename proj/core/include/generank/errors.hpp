#pragma once

#include <stdexcept>
#include <string>

namespace generank {

/// Malformed or inconsistent user-supplied input (files, ids, parameters).
/// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver stopped at its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string &what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

} // namespace generank
