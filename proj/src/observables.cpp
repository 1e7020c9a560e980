#include "llg/observables.hpp"

#include <cmath>

namespace llg {

namespace {

double h1_full_norm(const FemContext& fem, const NodalField& diff) {
    const double l2_sq = inner_l2(fem, diff, diff);
    const double h1_sq = inner_h1(fem, diff, diff);
    return std::sqrt(std::max(0.0, l2_sq + h1_sq));
}

double l2_norm(const FemContext& fem, const NodalField& diff) {
    return std::sqrt(std::max(0.0, inner_l2(fem, diff, diff)));
}

bool is_max_norm(ErrorNorm n) { return n == ErrorNorm::L2Max || n == ErrorNorm::H1Max; }
bool is_l2_norm(ErrorNorm n) { return n == ErrorNorm::L2Final || n == ErrorNorm::L2Max; }

// state access that also works for runs keeping only the first and last state
const NodalField& state_at(const Trajectory& traj, int j) {
    if (traj.full_states) return traj.state(j);
    if (j == 0) return traj.initial_state();
    if (j == traj.n_steps()) return traj.final_state();
    throw ConfigError("error_vs_reference: intermediate states were not stored for this run");
}

}  // namespace

double total_energy(const FemContext& fem, const NodalField& m, const NodalField& f,
                    double lambda_ex_sq) {
    if (m.mesh != f.mesh) throw ConfigError("total_energy: fields on different meshes");
    return 0.5 * lambda_ex_sq * inner_h1(fem, m, m) - inner_l2(fem, f, m);
}

double energy_identity_residual(const FemContext& fem, const Trajectory& traj, int n,
                                const std::vector<NodalField>& field_samples) {
    if (traj.scheme != Scheme::Bdf2)
        throw ConfigError("energy_identity_residual: two-step trajectories only");
    if (n < 1 || n > traj.n_steps())
        throw ConfigError("energy_identity_residual: n out of range");
    const double tau = traj.tau;
    const double lam = traj.lambda_ex_sq;

    double sum_v_sq = 0.0;
    double sum_fv = 0.0;
    for (int j = 0; j < n; ++j) {
        sum_v_sq += inner_l2(fem, traj.velocities[j], traj.velocities[j]);
        sum_fv += inner_l2(fem, field_samples.at(j), traj.velocities[j]);
    }
    double sum_grad_d2 = 0.0;
    for (int j = 1; j < n; ++j) {
        NodalField delta = axpby(1.0, traj.state(j + 1), -2.0, traj.state(j));
        delta = axpby(1.0, delta, 1.0, traj.state(j - 1));
        sum_grad_d2 += inner_h1(fem, delta, delta);
    }
    const NodalField diff = axpby(1.0, traj.state(n), -1.0, traj.state(n - 1));
    const double grad_sq_0 = inner_h1(fem, traj.state(0), traj.state(0));
    const double grad_sq_1 = inner_h1(fem, traj.state(1), traj.state(1));
    const double grad_sq_n = inner_h1(fem, traj.state(n), traj.state(n));
    const double grad_sq_n1 = inner_h1(fem, traj.state(n - 1), traj.state(n - 1));

    const double lhs = traj.alpha * tau * sum_v_sq + 0.5 * lam * grad_sq_n +
                       0.5 * lam * inner_h1(fem, diff, diff) + 0.25 * lam * sum_grad_d2;
    const double rhs = 0.5 * lam * grad_sq_0 + tau * sum_fv +
                       0.25 * lam * ((grad_sq_1 - grad_sq_0) + (grad_sq_n1 - grad_sq_n));
    return lhs - rhs;
}

CflIndicator cfl_indicator(const FemContext& fem, const Trajectory& traj, int n) {
    if (n < 1 || n > traj.n_steps()) throw ConfigError("cfl_indicator: n out of range");
    CflIndicator c;
    c.eta0 = inner_h1(fem, traj.state(1), traj.state(1)) -
             inner_h1(fem, traj.state(0), traj.state(0));
    c.eta_n = inner_h1(fem, traj.state(n - 1), traj.state(n - 1)) -
              inner_h1(fem, traj.state(n), traj.state(n));
    c.C = std::sqrt(c.eta0 * c.eta0 + c.eta_n * c.eta_n);
    return c;
}

CflIndicator cfl_indicator(const Trajectory& traj) {
    CflIndicator c;
    c.eta0 = traj.eta0;
    c.eta_n = traj.eta_n;
    c.C = std::sqrt(c.eta0 * c.eta0 + c.eta_n * c.eta_n);
    return c;
}

RegularityDiagnostics regularity_diagnostics(const FemContext& fem, const Trajectory& traj,
                                             int n) {
    if (n < 2 || n > traj.n_steps())
        throw ConfigError("regularity_diagnostics: n out of range");
    RegularityDiagnostics d;
    d.v0_norm_sq = inner_l2(fem, traj.velocities[0], traj.velocities[0]);
    const double tau = traj.tau;
    for (int j = 2; j <= n; ++j) {
        NodalField delta = axpby(1.0, traj.state(j), -2.0, traj.state(j - 1));
        delta = axpby(1.0, delta, 1.0, traj.state(j - 2));
        d.d2_sum += inner_l2(fem, delta, delta) / (tau * tau);
    }
    return d;
}

double error_vs_reference(const Trajectory& traj, const Trajectory& reference, ErrorNorm norm) {
    const bool same_mesh = traj.mesh == reference.mesh;
    if (!same_mesh) {
        if (!traj.mesh->structured || !reference.mesh->structured ||
            reference.mesh->structured->level < traj.mesh->structured->level)
            throw ConfigError("error_vs_reference: meshes must be nested structured meshes");
    }
    const int n = traj.n_steps();
    const int stride_num = reference.n_steps();
    if (stride_num % n != 0)
        throw ConfigError("error_vs_reference: reference steps must be a multiple of steps");
    const int stride = stride_num / n;

    const FemContext fem = make_fem_context(reference.mesh);
    auto norm_at = [&](int j) {
        const NodalField coarse =
            same_mesh ? state_at(traj, j) : prolong_to(state_at(traj, j), reference.mesh);
        const NodalField diff = axpby(1.0, coarse, -1.0, state_at(reference, j * stride));
        return is_l2_norm(norm) ? l2_norm(fem, diff) : h1_full_norm(fem, diff);
    };

    if (!is_max_norm(norm)) return norm_at(n);
    double e = 0.0;
    for (int j = 1; j <= n; ++j) e = std::max(e, norm_at(j));
    return e;
}

double error_vs_analytic(const Trajectory& traj, const SpaceTimeFn& exact, ErrorNorm norm) {
    const FemContext fem = make_fem_context(traj.mesh);
    auto norm_at = [&](int j) {
        const NodalField exact_j = interpolate_nodal(exact, traj.mesh, j * traj.tau);
        const NodalField diff = axpby(1.0, traj.state(j), -1.0, exact_j);
        return is_l2_norm(norm) ? l2_norm(fem, diff) : h1_full_norm(fem, diff);
    };
    if (!is_max_norm(norm)) return norm_at(traj.n_steps());
    double e = 0.0;
    for (int j = 1; j <= traj.n_steps(); ++j) e = std::max(e, norm_at(j));
    return e;
}

std::vector<double> eoc(const std::vector<double>& errors) {
    if (errors.size() < 2) throw ConfigError("eoc: need at least two errors");
    std::vector<double> orders;
    orders.reserve(errors.size() - 1);
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        if (!(errors[k] > 0.0) || !(errors[k + 1] > 0.0))
            throw ConfigError("eoc: nonpositive error entry, order undefined");
        orders.push_back(std::log2(errors[k] / errors[k + 1]));
    }
    return orders;
}

}  // namespace llg
