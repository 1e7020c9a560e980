#pragma once

#include "llg/assembly.hpp"
#include "llg/errors.hpp"
#include "llg/field.hpp"
#include "llg/linear_solver.hpp"
#include "llg/tangent.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace llg {

enum class Scheme { Bdf2, Tps, Mid };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct MidpointConfig {
    double fp_tolerance = 1e-10;
    int fp_max_iterations = 200;
};

struct SolverConfig {
    double alpha = 0.25;        // Gilbert damping
    double lambda_ex_sq = 1.0;  // exchange constant squared
    double final_time = 1.0;
    int steps = 1;              // N; tau = final_time / N
    Scheme scheme = Scheme::Bdf2;
    LinearSolveConfig linear;
    MidpointConfig midpoint;
    bool tps_field_lagged = false;   // sample the applied field at t_j instead of t_{j+1}
    bool store_trajectory = true;    // keep all states/velocities (else first and last only)

    double tau() const { return final_time / steps; }
};

/// Throws ConfigError on violated invariants (alpha > 0, lambda_ex_sq > 0,
/// steps >= 1, and steps >= 2 for the two-step scheme).
void validate(const SolverConfig& cfg);

struct Problem {
    MeshPtr mesh;
    NodalField m0;             // unit nodal modulus (normalized on ingestion)
    SpaceTimeFn applied_field;
    bool field_constant_in_time = false;
};

/// Interpolates the initial datum and renormalizes it nodally. Throws
/// NumericalError if the datum (nearly) vanishes at a vertex.
Problem make_problem(MeshPtr mesh, const SpaceTimeFn& m0_fn, const SpaceTimeFn& applied_field,
                     bool field_constant_in_time);

struct StepRecord {
    int j = 0;
    double t = 0.0;
    double energy = 0.0;
    double h1_semi = 0.0;
    double w1inf_semi = 0.0;
    double linf_nodal = 0.0;
    double nodal_l1_dev = 0.0;
    double quad_l1_dev = 0.0;
    double v_norm_sq = 0.0;                  // |v^{j-1}|^2 that produced this state; 0 at j=0
    double energy_identity_residual = 0.0;   // scheme energy identity at n=j (nan for MID)
};

struct Trajectory {
    MeshPtr mesh;
    Scheme scheme = Scheme::Bdf2;
    double tau = 0.0;
    double alpha = 0.0;
    double lambda_ex_sq = 0.0;
    bool full_states = true;

    std::vector<NodalField> states;      // m^j, j = 0..N (first and last if !full_states)
    std::vector<NodalField> velocities;  // v^j, j = 0..N-1 (for MID: d_t m^{j+1})
    std::vector<StepRecord> records;     // one per state

    // summary diagnostics accumulated during the run
    double v0_norm_sq = 0.0;
    double d2_sum = 0.0;                 // tau^2 sum_{j=2}^N |d_t^2 m^j|_{L2}^2
    double eta0 = 0.0;                   // |grad m^1|^2 - |grad m^0|^2
    double eta_n = 0.0;                  // |grad m^{N-1}|^2 - |grad m^N|^2
    double grad_m0_sq = 0.0;
    double initial_energy = 0.0;
    double max_identity_residual = 0.0;
    double constraint_law_max_residual = 0.0;   // nodal two-step law (exact for BDF2)
    double tps_step_law_max_residual = 0.0;     // nodal Pythagoras law (exact for TPS)
    double min_nodal_modulus = std::numeric_limits<double>::infinity();

    int n_steps() const { return static_cast<int>(records.size()) - 1; }
    double final_time() const { return tau * n_steps(); }
    const NodalField& initial_state() const { return states.front(); }
    const NodalField& final_state() const { return states.back(); }
    const NodalField& state(int j) const;  // requires full_states
};

struct InitialStepResult {
    NodalField v0;
    NodalField m1;
};

/// First step of the tangent-plane integrator: v^0 in T_h(m^0) from
///   alpha<v,phi> + <m0 x v, phi> + lambda^2 tau <grad v, grad phi>
///     = <f1, phi> - lambda^2 <grad m0, grad phi>,
/// then m^1 = m^0 + tau v^0.
InitialStepResult initial_step(const FemContext& fem, const NodalField& m0, const NodalField& f1,
                               const SolverConfig& cfg);

struct StepResult {
    NodalField v;
    NodalField m_next;
};

/// Two-step scheme: predictor m_hat = 2 m^j - m^{j-1}, v^j in T_h(m_hat) from
///   alpha<v,phi> + <m_hat x v, phi> + (2/3) lambda^2 tau <grad v, grad phi>
///     = <f^{j+1}, phi> - (1/3) lambda^2 <grad(4 m^j - m^{j-1}), grad phi>,
/// then m^{j+1} = (4/3) m^j - (1/3) m^{j-1} + (2/3) tau v^j.
StepResult bdf2_step(const FemContext& fem, const NodalField& m_prev, const NodalField& m_curr,
                     const NodalField& f_next, const SolverConfig& cfg);

/// Projection-free first-order step: the initial-step equations anchored at m^j.
StepResult tps_step(const FemContext& fem, const NodalField& m_curr, const NodalField& f_next,
                    const SolverConfig& cfg);

/// Implicit midpoint step solved by fixed-point iteration on the frozen midpoint.
/// Throws FixedPointError if the iteration does not contract.
NodalField midpoint_step(const FemContext& fem, const NodalField& m_curr, const NodalField& f_half,
                         const SolverConfig& cfg, int step_index = -1);

/// Runs the configured scheme over the whole time interval, recording per-step
/// observables and the running identity residuals. The first failing step aborts
/// the run with a NumericalError carrying the step index.
Trajectory run_simulation(const Problem& problem, const SolverConfig& cfg);

enum class Interpolant { Linear, Minus, Plus, HatPlus, VMinus };

/// Time interpolants of the trajectory on [0, T]; right-open intervals, with t = T
/// mapped to the value on the last interval (the final state for Linear/Plus).
NodalField evaluate_interpolant(const Trajectory& traj, Interpolant which, double t);

/// Per-step CSV with columns
/// j,t,energy,h1_semi,w1inf_semi,linf_nodal,nodal_l1_dev,quad_l1_dev,v_norm_sq,energy_identity_residual.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace llg
