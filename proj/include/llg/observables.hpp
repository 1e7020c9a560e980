#pragma once

#include "llg/assembly.hpp"
#include "llg/integrators.hpp"

#include <vector>

namespace llg {

/// Total Gibbs free energy (lambda^2/2)|grad m|^2 - <f, m> of P1 fields.
double total_energy(const FemContext& fem, const NodalField& m, const NodalField& f,
                    double lambda_ex_sq);

/// Residual of the two-step scheme's discrete energy identity at step n,
/// recomputed from the stored states and velocities (independent of the online
/// accumulation done by run_simulation).
double energy_identity_residual(const FemContext& fem, const Trajectory& traj, int n,
                                const std::vector<NodalField>& field_samples);

struct CflIndicator {
    double eta0 = 0.0;   // |grad m^1|^2 - |grad m^0|^2
    double eta_n = 0.0;  // |grad m^{n-1}|^2 - |grad m^n|^2
    double C = 0.0;      // sqrt(eta0^2 + eta_n^2)
};

CflIndicator cfl_indicator(const FemContext& fem, const Trajectory& traj, int n);
/// Final-step indicator from the trajectory's accumulated summary (no states needed).
CflIndicator cfl_indicator(const Trajectory& traj);

struct RegularityDiagnostics {
    double v0_norm_sq = 0.0;
    double d2_sum = 0.0;  // tau^2 sum_{j=2}^n |d_t^2 m^j|^2
};

RegularityDiagnostics regularity_diagnostics(const FemContext& fem, const Trajectory& traj, int n);

enum class ErrorNorm { L2Final, H1Final, L2Max, H1Max };

/// Error against a reference trajectory: same mesh with a refined time step
/// (reference restricted to the coarse time nodes), or a nested finer mesh with
/// matching steps (coarse states prolonged by P1 interpolation). H1 is the full
/// norm (L2 plus seminorm); "max" variants maximize over j = 1..N.
double error_vs_reference(const Trajectory& traj, const Trajectory& reference, ErrorNorm norm);

/// Error against an exact solution sampled by nodal interpolation on the
/// trajectory's own mesh.
double error_vs_analytic(const Trajectory& traj, const SpaceTimeFn& exact, ErrorNorm norm);

/// Empirical orders of convergence log2(e_k / e_{k+1}) for resolutions halving.
/// Throws ConfigError on fewer than two entries or nonpositive errors.
std::vector<double> eoc(const std::vector<double>& errors);

}  // namespace llg
