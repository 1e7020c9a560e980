#pragma once

#include "llg/assembly.hpp"
#include "llg/errors.hpp"

#include <Eigen/Dense>

namespace llg {

enum class SolveMethod { Auto, DenseDirect, Krylov };

struct LinearSolveConfig {
    SolveMethod method = SolveMethod::Auto;
    double rel_tolerance = 1e-10;
    int max_iterations = 0;     // 0 means 10 * n
    int dense_threshold = 2000;
};

/// Solves A x = b for square sparse A whose symmetric part is positive definite.
/// Auto picks dense LU below dense_threshold unknowns and otherwise restarted
/// GMRES with diagonal preconditioning. Every returned solution satisfies
/// |A x - b| <= rel_tolerance * |b|; otherwise a SolveError carrying the achieved
/// residual is thrown. An optional warm start seeds the Krylov iteration.
Eigen::VectorXd solve_linear(const SparseMat& A, const Eigen::VectorXd& b,
                             const LinearSolveConfig& cfg,
                             const Eigen::VectorXd* warm_start = nullptr);

}  // namespace llg
