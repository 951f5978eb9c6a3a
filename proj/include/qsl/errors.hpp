#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

/// Process exit codes of the command-line tool.
enum class ExitCode : int { ok = 0, config_error = 2, invariant_violation = 3, solver_nonconvergence = 4 };

/// Rejected configuration (detected before any time stepping).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A run broke one of its hard invariants (maximum principle, energy
/// inequality, non-finite values, divergence after projection).
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(std::string which, const std::string& what)
        : std::runtime_error(which + ": " + what), which_(std::move(which)) {}
    const std::string& which() const { return which_; }

private:
    std::string which_;
};

/// An iterative linear solve failed to reach its tolerance.
class SolverNonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qsl
