#include "llg/linear_solver.hpp"

#include <unsupported/Eigen/IterativeSolvers>

#include <string>

namespace llg {

namespace {

void validate(const LinearSolveConfig& cfg, const SparseMat& A, const Eigen::VectorXd& b) {
    if (!(cfg.rel_tolerance > 0.0 && cfg.rel_tolerance < 1.0))
        throw ConfigError("solve_linear: rel_tolerance must be in (0,1)");
    if (cfg.max_iterations < 0) throw ConfigError("solve_linear: max_iterations must be >= 1");
    if (A.rows() != A.cols()) throw ConfigError("solve_linear: matrix must be square");
    if (A.rows() != b.size()) throw ConfigError("solve_linear: dimension mismatch");
}

}  // namespace

Eigen::VectorXd solve_linear(const SparseMat& A, const Eigen::VectorXd& b,
                             const LinearSolveConfig& cfg, const Eigen::VectorXd* warm_start) {
    validate(cfg, A, b);
    const auto n = A.rows();
    const double bnorm = b.norm();
    if (bnorm == 0.0) return Eigen::VectorXd::Zero(n);

    SolveMethod method = cfg.method;
    if (method == SolveMethod::Auto)
        method = n < cfg.dense_threshold ? SolveMethod::DenseDirect : SolveMethod::Krylov;

    Eigen::VectorXd x;
    int iterations = 0;
    if (method == SolveMethod::DenseDirect) {
        const Eigen::MatrixXd dense(A);
        x = Eigen::PartialPivLU<Eigen::MatrixXd>(dense).solve(b);
    } else {
        Eigen::GMRES<SparseMat, Eigen::DiagonalPreconditioner<double>> gmres;
        gmres.set_restart(50);
        gmres.setTolerance(cfg.rel_tolerance);
        gmres.setMaxIterations(cfg.max_iterations > 0 ? cfg.max_iterations
                                                      : 10 * static_cast<int>(n));
        gmres.compute(A);
        if (warm_start && warm_start->size() == n)
            x = gmres.solveWithGuess(b, *warm_start);
        else
            x = gmres.solve(b);
        iterations = static_cast<int>(gmres.iterations());
    }

    const double residual = (A * x - b).norm();
    if (!(residual <= cfg.rel_tolerance * bnorm) || !x.allFinite())
        throw SolveError("solve_linear: residual " + std::to_string(residual / bnorm) +
                             " above tolerance " + std::to_string(cfg.rel_tolerance),
                         residual / bnorm, iterations);
    return x;
}

}  // namespace llg
