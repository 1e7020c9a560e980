#pragma once

#include "llg/linear_solver.hpp"
#include "llg/integrators.hpp"
#include "llg/problems.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace llg {

/// Configuration of a single run or a parameter sweep, settable from the CLI
/// and from a flat key=value config file.
struct StudyConfig {
    std::string problem = "radial";
    std::vector<Scheme> schemes;        // empty: command default
    std::string mesh_family;            // "halved" | "crisscross" (empty: command default)
    int level = -1;                     // fixed mesh level (-1: command default)
    std::vector<int> levels;            // conv-space ladder (empty: command default)
    std::vector<double> taus;           // explicit tau ladder
    std::string tau_rule;               // "h/10", "h^2", "fractions", "powers", ...
    int bisections = -1;                // ladder length (-1: command default)
    int steps = 0;                      // explicit N (run command)
    double alpha = std::nan("");        // nan: problem default
    double lambda_sq = std::nan("");    // nan: problem default
    double final_time = std::nan("");   // nan: problem default
    std::string out_dir = ".";
    int jobs = 1;
    bool full = false;                  // restore the full (non-desk-scale) ladders
    unsigned seed = 0;                  // reserved; the core is deterministic
    LinearSolveConfig solver;
    bool tps_field_lagged = false;
};

/// Parses a config file of [section] headers and key = value lines into cfg.
/// Unknown keys raise ConfigError.
void load_study_config(const std::string& path, StudyConfig& cfg);

/// Evaluates a tau rule "c*h^a" (also "h", "h/10", "h^2/10", "h^(3/2)") at mesh size h.
double eval_tau_rule(const std::string& rule, double h);

/// Benchmark + mesh + solver settings resolved from a study config.
struct RunSetup {
    BenchmarkProblem bench;
    MeshPtr mesh;
    Problem problem;
    SolverConfig solver;
};

RunSetup resolve_run(const StudyConfig& cfg);

/// Single simulation; writes trajectory.csv and summary.csv into out_dir.
Trajectory cmd_run(const StudyConfig& cfg);

struct ConvergenceRow {
    double resolution = 0.0;  // tau or h
    double error_l2 = 0.0;
    double error_h1 = 0.0;
    double eoc_l2 = std::nan("");
    double eoc_h1 = std::nan("");
};

/// Temporal convergence on a fixed mesh. Problems with an exact solution are
/// compared against it (max-over-steps norms); otherwise against a reference run
/// with the time step refined four bisections further, restricted to the coarse
/// time nodes (final-time norms). Writes conv_time.csv.
std::vector<ConvergenceRow> cmd_convergence_time(const StudyConfig& cfg);

/// Spatial convergence with fixed time step over a nested mesh ladder; analytic
/// comparison when available, otherwise a reference run on a twice-refined mesh.
/// Writes conv_space.csv.
std::vector<ConvergenceRow> cmd_convergence_space(const StudyConfig& cfg);

struct ConstraintRow {
    double tau = 0.0;
    double dev_bdf2 = std::nan("");
    double eoc_bdf2 = std::nan("");
    double dev_tps = std::nan("");
    double eoc_tps = std::nan("");
    double v0_norm_sq = 0.0;
    double d2_bdf2 = std::nan("");
    double d2_tps = std::nan("");
};

/// Unit-length deviation against tau for the two tangent-plane schemes, plus the
/// regularity diagnostics columns. Writes constraint.csv.
std::vector<ConstraintRow> cmd_constraint_study(const StudyConfig& cfg);

struct CflRow {
    double tau = 0.0;
    double eta0 = 0.0;
    double eta_n = 0.0;
    double C = 0.0;
    bool decayed = false;  // C < C of the previous (larger) tau
};

/// Decay of C(tau) = sqrt(eta0^2 + eta_n^2) on a fixed mesh for a tau ladder of
/// fractions (default) or powers of h. Writes cfl.csv.
std::vector<CflRow> cmd_cfl_study(const StudyConfig& cfg);

}  // namespace llg
