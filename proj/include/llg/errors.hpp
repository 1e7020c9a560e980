#pragma once

#include <stdexcept>
#include <string>

namespace llg {

/// Invalid run/study configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure during a run (maps to CLI exit code 3). `step` is the
/// time-step index at which the failure occurred, -1 if not step-related.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg, int step_index = -1)
        : std::runtime_error(msg), step(step_index) {}
    int step;
};

/// Linear solve did not reach its residual tolerance.
struct SolveError : NumericalError {
    SolveError(const std::string& msg, double residual, int iterations)
        : NumericalError(msg), achieved_residual(residual), iterations(iterations) {}
    double achieved_residual;
    int iterations;
};

/// Tangent-frame anchor with (near-)zero nodal modulus; signals predictor collapse.
struct DegenerateAnchorError : NumericalError {
    DegenerateAnchorError(const std::string& msg, int node_index)
        : NumericalError(msg), node(node_index) {}
    int node;
};

/// Midpoint fixed-point iteration exceeded its iteration budget.
struct FixedPointError : NumericalError {
    FixedPointError(const std::string& msg, int step_index, double diff)
        : NumericalError(msg, step_index), achieved_diff(diff) {}
    double achieved_diff;
};

}  // namespace llg
