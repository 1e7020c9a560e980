#include "llg/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace llg {

namespace {

LinearSolveConfig midpoint_inner_solver(const LinearSolveConfig& base) {
    // The fixed-point matrix changes every sweep; a warm-started Krylov solve is
    // far cheaper than refactorizing. An explicit dense-direct request is honored.
    LinearSolveConfig cfg = base;
    if (cfg.method == SolveMethod::Auto) cfg.method = SolveMethod::Krylov;
    return cfg;
}

// r[3i+c] = sum_K sum_k int_K (w x d_k w) . d_k(lambda_i e_c) dx, exact:
// the integrand is linear per element.
Eigen::VectorXd cross_gradient_rhs(const Mesh& mesh, const NodalField& w) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(3 * mesh.n_vertices());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double area = triangle_area(mesh, t);
        const auto g = p1_gradients(mesh, t);
        const auto& tri = mesh.triangles[t];
        Eigen::Matrix<double, 3, 2> grad = Eigen::Matrix<double, 3, 2>::Zero();
        Eigen::Vector3d wbar = Eigen::Vector3d::Zero();
        for (int i = 0; i < 3; ++i) {
            grad += w[tri[i]] * g.row(i);
            wbar += w[tri[i]] / 3.0;
        }
        for (int k = 0; k < 2; ++k) {
            const Eigen::Vector3d c = area * wbar.cross(Eigen::Vector3d(grad.col(k)));
            for (int i = 0; i < 3; ++i) r.segment<3>(3 * tri[i]) += g(i, k) * c;
        }
    }
    return r;
}

struct IdentityAccumulators {
    double sum_v_sq = 0.0;        // sum_j |v^j|^2
    double sum_fv = 0.0;          // sum_j <f_used^j, v^j>
    double sum_grad_d2 = 0.0;     // sum_j |grad(m^{j+1} - 2m^j + m^{j-1})|^2  (BDF2)
    double sum_grad_v_sq = 0.0;   // sum_j |grad v^j|^2                        (TPS)
    double grad_sq_prev = 0.0;    // |grad m^{n-1}|^2
    double grad_sq_first = 0.0;   // |grad m^1|^2
};

}  // namespace

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Bdf2: return "bdf2";
        case Scheme::Tps: return "tps";
        case Scheme::Mid: return "midpoint";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "bdf2") return Scheme::Bdf2;
    if (name == "tps") return Scheme::Tps;
    if (name == "midpoint" || name == "mid") return Scheme::Mid;
    throw ConfigError("unknown scheme: " + name);
}

void validate(const SolverConfig& cfg) {
    if (!(cfg.alpha > 0.0)) throw ConfigError("config: alpha must be > 0");
    if (!(cfg.lambda_ex_sq > 0.0)) throw ConfigError("config: lambda_ex_sq must be > 0");
    if (!(cfg.final_time > 0.0)) throw ConfigError("config: final_time must be > 0");
    if (cfg.steps < 1) throw ConfigError("config: steps must be >= 1");
    if (cfg.scheme == Scheme::Bdf2 && cfg.steps < 2)
        throw ConfigError("config: the two-step scheme needs steps >= 2");
    if (cfg.midpoint.fp_max_iterations < 1)
        throw ConfigError("config: fp_max_iterations must be >= 1");
    if (!(cfg.midpoint.fp_tolerance > 0.0))
        throw ConfigError("config: fp_tolerance must be > 0");
}

Problem make_problem(MeshPtr mesh, const SpaceTimeFn& m0_fn, const SpaceTimeFn& applied_field,
                     bool field_constant_in_time) {
    Problem p;
    p.mesh = std::move(mesh);
    p.m0 = interpolate_nodal(m0_fn, p.mesh, 0.0);
    for (int z = 0; z < p.m0.size(); ++z) {
        const double n = p.m0[z].norm();
        if (!(n > kAnchorEpsilon))
            throw NumericalError("make_problem: initial datum vanishes at node " +
                                 std::to_string(z));
        p.m0[z] /= n;
    }
    p.applied_field = applied_field;
    p.field_constant_in_time = field_constant_in_time;
    return p;
}

const NodalField& Trajectory::state(int j) const {
    if (!full_states)
        throw ConfigError("trajectory: full state storage was disabled for this run");
    return states[j];
}

InitialStepResult initial_step(const FemContext& fem, const NodalField& m0, const NodalField& f1,
                               const SolverConfig& cfg) {
    const double tau = cfg.tau();
    const TangentFrame frame = build_tangent_frame(m0);
    const SparseMat cross = assemble_cross_form(*fem.mesh, m0);
    const SparseMat a = cfg.alpha * fem.mass3 + cross + cfg.lambda_ex_sq * tau * fem.stiffness3;
    const Eigen::VectorXd rhs =
        fem.mass3 * f1.flatten() - cfg.lambda_ex_sq * (fem.stiffness3 * m0.flatten());
    InitialStepResult r;
    r.v0 = solve_in_tangent_space(frame, a, rhs, cfg.linear);
    r.m1 = axpby(1.0, m0, tau, r.v0);
    return r;
}

StepResult bdf2_step(const FemContext& fem, const NodalField& m_prev, const NodalField& m_curr,
                     const NodalField& f_next, const SolverConfig& cfg) {
    const double tau = cfg.tau();
    const double lam = cfg.lambda_ex_sq;
    const NodalField predictor = axpby(2.0, m_curr, -1.0, m_prev);
    const TangentFrame frame = build_tangent_frame(predictor);
    const SparseMat cross = assemble_cross_form(*fem.mesh, predictor);
    const SparseMat a = cfg.alpha * fem.mass3 + cross + (2.0 / 3.0) * lam * tau * fem.stiffness3;
    const NodalField history = axpby(4.0, m_curr, -1.0, m_prev);
    const Eigen::VectorXd rhs =
        fem.mass3 * f_next.flatten() - (lam / 3.0) * (fem.stiffness3 * history.flatten());
    StepResult r;
    r.v = solve_in_tangent_space(frame, a, rhs, cfg.linear);
    r.m_next = axpby(4.0 / 3.0, m_curr, -1.0 / 3.0, m_prev);
    r.m_next = axpby(1.0, r.m_next, (2.0 / 3.0) * tau, r.v);
    return r;
}

StepResult tps_step(const FemContext& fem, const NodalField& m_curr, const NodalField& f_next,
                    const SolverConfig& cfg) {
    const auto first = initial_step(fem, m_curr, f_next, cfg);
    return StepResult{first.v0, first.m1};
}

NodalField midpoint_step(const FemContext& fem, const NodalField& m_curr, const NodalField& f_half,
                         const SolverConfig& cfg, int step_index) {
    const double tau = cfg.tau();
    const LinearSolveConfig inner = midpoint_inner_solver(cfg.linear);
    const Eigen::VectorXd m_vec = m_curr.flatten();
    const Eigen::VectorXd f_vec = f_half.flatten();

    NodalField u = m_curr;
    Eigen::VectorXd u_vec = m_vec;
    double diff = std::numeric_limits<double>::infinity();
    for (int it = 0; it < cfg.midpoint.fp_max_iterations; ++it) {
        const NodalField w = axpby(0.5, m_curr, 0.5, u);
        const SparseMat cross = assemble_cross_form(*fem.mesh, w);
        const SparseMat a = fem.mass3 - cfg.alpha * cross;
        const Eigen::VectorXd rhs = a * m_vec +
                                    tau * cfg.lambda_ex_sq * cross_gradient_rhs(*fem.mesh, w) -
                                    tau * (cross * f_vec);
        Eigen::VectorXd u_new;
        try {
            u_new = solve_linear(a, rhs, inner, &u_vec);
        } catch (const SolveError& e) {
            throw FixedPointError("midpoint_step: inner solve failed (" +
                                      std::string(e.what()) + ")",
                                  step_index, diff);
        }
        const NodalField u_next = NodalField::from_flat(m_curr.mesh, u_new);
        diff = NodalField::max_nodal_distance(u_next, u);
        u = u_next;
        u_vec = u_new;
        if (!std::isfinite(diff))
            throw FixedPointError("midpoint_step: fixed-point iteration diverged", step_index,
                                  diff);
        if (diff < cfg.midpoint.fp_tolerance) return u;
    }
    throw FixedPointError("midpoint_step: no convergence within " +
                              std::to_string(cfg.midpoint.fp_max_iterations) + " iterations",
                          step_index, diff);
}

Trajectory run_simulation(const Problem& problem, const SolverConfig& cfg) {
    validate(cfg);
    const FemContext fem = make_fem_context(problem.mesh);
    const double tau = cfg.tau();
    const double lam = cfg.lambda_ex_sq;
    const int n_steps = cfg.steps;
    const int n_nodes = problem.mesh->n_vertices();

    Trajectory traj;
    traj.mesh = problem.mesh;
    traj.scheme = cfg.scheme;
    traj.tau = tau;
    traj.alpha = cfg.alpha;
    traj.lambda_ex_sq = lam;
    traj.full_states = cfg.store_trajectory;
    traj.records.reserve(n_steps + 1);

    NodalField f_curr = interpolate_nodal(problem.applied_field, problem.mesh, 0.0);
    auto field_at = [&](double t) -> const NodalField& {
        if (!problem.field_constant_in_time)
            f_curr = interpolate_nodal(problem.applied_field, problem.mesh, t);
        return f_curr;
    };

    IdentityAccumulators acc;
    std::vector<double> law_T(n_nodes, 0.0), law_R(n_nodes, 0.0), v0_sq_node(n_nodes, 0.0);
    double pow3_minus_n = 1.0;

    NodalField m_prev;  // m^{j-1}
    NodalField m_curr = problem.m0;

    auto record_state = [&](int j, const NodalField& m, double v_norm_sq,
                            double identity_residual, double grad_sq) {
        StepRecord rec;
        rec.j = j;
        rec.t = j * tau;
        const FieldNorms norms = field_norms(fem, m);
        rec.h1_semi = norms.h1_semi;
        rec.w1inf_semi = norms.w1inf_semi;
        rec.linf_nodal = norms.linf_nodal;
        const ConstraintDeviation dev = constraint_deviation(m);
        rec.nodal_l1_dev = dev.nodal_l1;
        rec.quad_l1_dev = dev.quadrature_l1;
        rec.energy = 0.5 * lam * grad_sq - inner_l2(fem, field_at(j * tau), m);
        rec.v_norm_sq = v_norm_sq;
        rec.energy_identity_residual = identity_residual;
        traj.records.push_back(rec);
        double min_mod = std::numeric_limits<double>::infinity();
        for (const auto& v : m.values) min_mod = std::min(min_mod, v.norm());
        traj.min_nodal_modulus = std::min(traj.min_nodal_modulus, min_mod);
    };

    auto push_state = [&](NodalField&& m) {
        if (traj.full_states || traj.states.size() < 2)
            traj.states.push_back(std::move(m));
        else
            traj.states.back() = std::move(m);
    };

    traj.grad_m0_sq = inner_h1(fem, m_curr, m_curr);
    record_state(0, m_curr, 0.0, 0.0, traj.grad_m0_sq);
    traj.initial_energy = traj.records[0].energy;
    acc.grad_sq_prev = traj.grad_m0_sq;
    push_state(NodalField(m_curr));

    // identity residual of the scheme at state index n, given the running sums
    auto bdf2_identity_residual = [&](double grad_sq_n, double grad_diff_sq) {
        const double eta0 = acc.grad_sq_first - traj.grad_m0_sq;
        const double eta_n = acc.grad_sq_prev - grad_sq_n;
        const double lhs = cfg.alpha * tau * acc.sum_v_sq + 0.5 * lam * grad_sq_n +
                           0.5 * lam * grad_diff_sq + 0.25 * lam * acc.sum_grad_d2;
        const double rhs =
            0.5 * lam * traj.grad_m0_sq + tau * acc.sum_fv + 0.25 * lam * (eta0 + eta_n);
        return lhs - rhs;
    };
    auto tps_identity_residual = [&](double grad_sq_n) {
        const double lhs = 0.5 * lam * grad_sq_n + cfg.alpha * tau * acc.sum_v_sq +
                           0.5 * lam * tau * tau * acc.sum_grad_v_sq;
        const double rhs = 0.5 * lam * traj.grad_m0_sq + tau * acc.sum_fv;
        return lhs - rhs;
    };

    auto advance = [&](int j) {  // computes m^{j+1} from the current history
        const double t_next = (j + 1) * tau;
        NodalField v;
        NodalField m_next;
        if (cfg.scheme == Scheme::Mid) {
            const NodalField f_half =
                problem.field_constant_in_time
                    ? f_curr
                    : interpolate_nodal(problem.applied_field, problem.mesh, (j + 0.5) * tau);
            m_next = midpoint_step(fem, m_curr, f_half, cfg, j);
            v = axpby(1.0 / tau, m_next, -1.0 / tau, m_curr);
        } else if (cfg.scheme == Scheme::Bdf2 && j >= 1) {
            const StepResult r = bdf2_step(fem, m_prev, m_curr, field_at(t_next), cfg);
            v = r.v;
            m_next = r.m_next;
        } else if (cfg.scheme == Scheme::Tps && j >= 1) {
            const double t_sample = cfg.tps_field_lagged ? j * tau : t_next;
            const StepResult r = tps_step(fem, m_curr, field_at(t_sample), cfg);
            v = r.v;
            m_next = r.m_next;
        } else {
            const double t_sample =
                (cfg.scheme == Scheme::Tps && cfg.tps_field_lagged) ? 0.0 : t_next;
            const InitialStepResult r = initial_step(fem, m_curr, field_at(t_sample), cfg);
            v = r.v0;
            m_next = r.m1;
        }

        // Observables and identity bookkeeping for state n = j+1.
        const int n = j + 1;
        const double v_sq = inner_l2(fem, v, v);
        const double grad_sq_n = inner_h1(fem, m_next, m_next);
        acc.sum_v_sq += v_sq;
        if (cfg.scheme != Scheme::Mid) acc.sum_fv += inner_l2(fem, f_curr, v);
        if (n == 1) {
            acc.grad_sq_first = grad_sq_n;
            traj.eta0 = grad_sq_n - traj.grad_m0_sq;
            traj.v0_norm_sq = v_sq;
            for (int z = 0; z < n_nodes; ++z) v0_sq_node[z] = v[z].squaredNorm();
        }

        double identity = std::numeric_limits<double>::quiet_NaN();
        if (cfg.scheme == Scheme::Bdf2 || cfg.scheme == Scheme::Tps) {
            const NodalField diff1 = axpby(1.0, m_next, -1.0, m_curr);
            const double grad_diff_sq = inner_h1(fem, diff1, diff1);
            if (cfg.scheme == Scheme::Tps) acc.sum_grad_v_sq += inner_h1(fem, v, v);
            if (n >= 2) {
                NodalField delta2 = axpby(1.0, m_next, -2.0, m_curr);
                delta2 = axpby(1.0, delta2, 1.0, m_prev);
                traj.d2_sum += inner_l2(fem, delta2, delta2) / (tau * tau);
                if (cfg.scheme == Scheme::Bdf2)
                    acc.sum_grad_d2 += inner_h1(fem, delta2, delta2);
            }
            identity = cfg.scheme == Scheme::Bdf2 ? bdf2_identity_residual(grad_sq_n, grad_diff_sq)
                                                  : tps_identity_residual(grad_sq_n);
            traj.max_identity_residual = std::max(traj.max_identity_residual, std::abs(identity));
        } else if (n >= 2) {
            NodalField delta2 = axpby(1.0, m_next, -2.0, m_curr);
            delta2 = axpby(1.0, delta2, 1.0, m_prev);
            traj.d2_sum += inner_l2(fem, delta2, delta2) / (tau * tau);
        }

        // Nodal constraint laws.
        pow3_minus_n /= 3.0;
        if (cfg.scheme == Scheme::Bdf2) {
            double max_res = 0.0;
            for (int z = 0; z < n_nodes; ++z) {
                if (n >= 2) {
                    const double d2 = (m_next[z] - 2.0 * m_curr[z] + m_prev[z]).squaredNorm();
                    law_T[z] += d2;
                    law_R[z] = (law_R[z] + d2) / 3.0;
                }
                const double expected = 1.0 +
                                        1.5 * (1.0 - pow3_minus_n) * tau * tau * v0_sq_node[z] +
                                        1.5 * (law_T[z] - law_R[z]);
                max_res = std::max(max_res, std::abs(m_next[z].squaredNorm() - expected));
            }
            traj.constraint_law_max_residual = std::max(traj.constraint_law_max_residual, max_res);
        } else if (cfg.scheme == Scheme::Tps) {
            double max_res = 0.0;
            for (int z = 0; z < n_nodes; ++z) {
                const double expected =
                    m_curr[z].squaredNorm() + tau * tau * v[z].squaredNorm();
                max_res = std::max(max_res, std::abs(m_next[z].squaredNorm() - expected));
            }
            traj.tps_step_law_max_residual = std::max(traj.tps_step_law_max_residual, max_res);
        }

        record_state(n, m_next, v_sq, identity, grad_sq_n);
        traj.eta_n = acc.grad_sq_prev - grad_sq_n;
        acc.grad_sq_prev = grad_sq_n;

        if (cfg.store_trajectory) traj.velocities.push_back(std::move(v));
        m_prev = std::move(m_curr);
        m_curr = std::move(m_next);
        push_state(NodalField(m_curr));
    };

    for (int j = 0; j < n_steps; ++j) {
        try {
            advance(j);
        } catch (NumericalError& e) {
            if (e.step < 0) e.step = j;
            throw;
        }
    }
    return traj;
}

NodalField evaluate_interpolant(const Trajectory& traj, Interpolant which, double t) {
    const double T = traj.final_time();
    if (!(t >= 0.0 && t <= T))
        throw ConfigError("evaluate_interpolant: t outside [0, T]");
    if (!traj.full_states)
        throw ConfigError("evaluate_interpolant: full state storage was disabled for this run");
    const int n = traj.n_steps();
    const double tau = traj.tau;
    const int j = std::min(n - 1, static_cast<int>(std::floor(t / tau)));

    switch (which) {
        case Interpolant::Linear: {
            const double a = (t - j * tau) / tau;
            return axpby(a, traj.states[j + 1], 1.0 - a, traj.states[j]);
        }
        case Interpolant::Minus:
            return traj.states[j];
        case Interpolant::Plus:
            return traj.states[j + 1];
        case Interpolant::HatPlus:
            if (j == 0) return traj.states[0];
            return axpby(2.0, traj.states[j], -1.0, traj.states[j - 1]);
        case Interpolant::VMinus:
            return traj.velocities.at(j);
    }
    throw ConfigError("evaluate_interpolant: unknown interpolant");
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "j,t,energy,h1_semi,w1inf_semi,linf_nodal,nodal_l1_dev,quad_l1_dev,"
           "v_norm_sq,energy_identity_residual\n";
    char buf[640];
    for (const auto& r : traj.records) {
        std::snprintf(buf, sizeof(buf),
                      "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.j, r.t,
                      r.energy, r.h1_semi, r.w1inf_semi, r.linf_nodal, r.nodal_l1_dev,
                      r.quad_l1_dev, r.v_norm_sq, r.energy_identity_residual);
        out << buf;
    }
}

}  // namespace llg
