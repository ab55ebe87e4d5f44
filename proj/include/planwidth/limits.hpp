#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace planwidth {

/// Size limits of the exact solvers. Exceeding one is an error, never a silent cutoff.
struct SolverLimits {
    std::size_t cutwidth = 20;
    std::size_t pathwidth = 20;
    std::size_t bandwidth = 16;
    std::size_t treewidth = 24;
    std::size_t treedepth = 15;
    std::size_t carving = 10;

    /// Applies "key=value,key=value" overrides (keys as the field names).
    void apply(const std::string& overrides);

    /// Defaults overridden by the PLANWIDTH_LIMITS environment variable, if set.
    static SolverLimits from_env();
};

const SolverLimits& default_limits();

class limit_exceeded : public std::runtime_error {
public:
    limit_exceeded(const std::string& solver, std::size_t n, std::size_t limit)
        : std::runtime_error(solver + ": n = " + std::to_string(n) + " exceeds the configured limit " +
                             std::to_string(limit)) {}
};

}  // namespace planwidth
