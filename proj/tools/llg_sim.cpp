// Command-line harness: single runs and the convergence / constraint / CFL
// sweeps, with plot-ready CSV output.

#include "llg/study.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

struct CliOptions {
    llg::StudyConfig cfg;
    std::vector<std::string> scheme_names;
    std::string solver_method = "auto";
    std::string config_file;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_file, "config file (key = value, [study]/[solver])");
    cmd->add_option("--problem", opt.cfg.problem, "radial | manufactured | blowup");
    cmd->add_option("--scheme", opt.scheme_names, "bdf2 | tps | midpoint (repeatable)");
    cmd->add_option("--mesh", opt.cfg.mesh_family, "halved | crisscross (default per command)");
    cmd->add_option("--level", opt.cfg.level, "mesh level (crisscross: 2^level cells per side)");
    cmd->add_option("--levels", opt.cfg.levels, "mesh level ladder (conv-space)");
    cmd->add_option("--tau", opt.cfg.taus, "time-step size; repeat for an explicit ladder");
    cmd->add_option("--tau-rule", opt.cfg.tau_rule,
                    "tau as a rule in h, e.g. h/10, h^2/10; cfl: fractions|powers");
    cmd->add_option("--bisections", opt.cfg.bisections, "number of ladder bisections");
    cmd->add_option("--steps", opt.cfg.steps, "number of time steps (run)");
    cmd->add_option("--alpha", opt.cfg.alpha, "damping parameter");
    cmd->add_option("--lambda-sq", opt.cfg.lambda_sq, "exchange constant squared");
    cmd->add_option("--final-time", opt.cfg.final_time, "final time");
    cmd->add_option("--out", opt.cfg.out_dir, "output directory");
    cmd->add_option("--jobs", opt.cfg.jobs, "max concurrent sweep jobs");
    cmd->add_flag("--full", opt.cfg.full, "full (non-desk-scale) ladders");
    cmd->add_option("--seed", opt.cfg.seed, "reserved; the core is deterministic");
    cmd->add_option("--solver", opt.solver_method, "auto | dense-direct | iterative-krylov");
    cmd->add_option("--solver-tol", opt.cfg.solver.rel_tolerance, "linear solver tolerance");
    cmd->add_option("--solver-maxit", opt.cfg.solver.max_iterations, "linear solver max iterations");
    cmd->add_flag("--tps-field-lagged", opt.cfg.tps_field_lagged,
                  "sample the applied field at t_j instead of t_{j+1} in the first-order scheme");
}

void finalize(CliOptions& opt, CLI::App* cmd) {
    if (!opt.config_file.empty()) {
        // flags win over the file: reload the file first, then re-apply flags
        llg::StudyConfig from_file;
        llg::load_study_config(opt.config_file, from_file);
        const llg::StudyConfig flag_values = opt.cfg;
        opt.cfg = from_file;
        for (const auto* o : cmd->get_options()) {
            if (o->count() == 0) continue;
            const std::string name = o->get_name();
            if (name == "--problem") opt.cfg.problem = flag_values.problem;
            else if (name == "--mesh") opt.cfg.mesh_family = flag_values.mesh_family;
            else if (name == "--level") opt.cfg.level = flag_values.level;
            else if (name == "--levels") opt.cfg.levels = flag_values.levels;
            else if (name == "--tau") opt.cfg.taus = flag_values.taus;
            else if (name == "--tau-rule") opt.cfg.tau_rule = flag_values.tau_rule;
            else if (name == "--bisections") opt.cfg.bisections = flag_values.bisections;
            else if (name == "--steps") opt.cfg.steps = flag_values.steps;
            else if (name == "--alpha") opt.cfg.alpha = flag_values.alpha;
            else if (name == "--lambda-sq") opt.cfg.lambda_sq = flag_values.lambda_sq;
            else if (name == "--final-time") opt.cfg.final_time = flag_values.final_time;
            else if (name == "--out") opt.cfg.out_dir = flag_values.out_dir;
            else if (name == "--jobs") opt.cfg.jobs = flag_values.jobs;
            else if (name == "--full") opt.cfg.full = flag_values.full;
            else if (name == "--seed") opt.cfg.seed = flag_values.seed;
            else if (name == "--solver-tol")
                opt.cfg.solver.rel_tolerance = flag_values.solver.rel_tolerance;
            else if (name == "--solver-maxit")
                opt.cfg.solver.max_iterations = flag_values.solver.max_iterations;
            else if (name == "--tps-field-lagged")
                opt.cfg.tps_field_lagged = flag_values.tps_field_lagged;
        }
    }
    for (const auto& name : opt.scheme_names)
        opt.cfg.schemes.push_back(llg::scheme_from_name(name));
    if (opt.solver_method == "auto") opt.cfg.solver.method = llg::SolveMethod::Auto;
    else if (opt.solver_method == "dense-direct") opt.cfg.solver.method = llg::SolveMethod::DenseDirect;
    else if (opt.solver_method == "iterative-krylov") opt.cfg.solver.method = llg::SolveMethod::Krylov;
    else throw llg::ConfigError("unknown solver method: " + opt.solver_method);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-element tangent-plane integrators for constrained magnetization dynamics"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* run = app.add_subcommand("run", "single simulation; trajectory + summary CSV");
    CLI::App* conv_time = app.add_subcommand("conv-time", "temporal convergence study");
    CLI::App* conv_space = app.add_subcommand("conv-space", "spatial convergence study");
    CLI::App* constraint = app.add_subcommand("constraint", "unit-length deviation study");
    CLI::App* cfl = app.add_subcommand("cfl", "decay of the step-size indicator C(tau)");
    for (auto* cmd : {run, conv_time, conv_space, constraint, cfl}) add_common_flags(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        finalize(opt, active);
        if (active == run) {
            const auto traj = llg::cmd_run(opt.cfg);
            std::cout << "run: " << traj.n_steps() << " steps, final energy "
                      << traj.records.back().energy << "\n";
        } else if (active == conv_time) {
            const auto rows = llg::cmd_convergence_time(opt.cfg);
            for (const auto& r : rows)
                std::cout << "tau " << r.resolution << "  err_h1 " << r.error_h1 << "  eoc_h1 "
                          << r.eoc_h1 << "\n";
        } else if (active == conv_space) {
            const auto rows = llg::cmd_convergence_space(opt.cfg);
            for (const auto& r : rows)
                std::cout << "h " << r.resolution << "  err_l2 " << r.error_l2 << "  err_h1 "
                          << r.error_h1 << "  eoc_h1 " << r.eoc_h1 << "\n";
        } else if (active == constraint) {
            const auto rows = llg::cmd_constraint_study(opt.cfg);
            for (const auto& r : rows)
                std::cout << "tau " << r.tau << "  dev_bdf2 " << r.dev_bdf2 << "  dev_tps "
                          << r.dev_tps << "\n";
        } else if (active == cfl) {
            const auto rows = llg::cmd_cfl_study(opt.cfg);
            for (const auto& r : rows)
                std::cout << "tau " << r.tau << "  C " << r.C
                          << (r.decayed ? "  (decayed)" : "") << "\n";
        }
    } catch (const llg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const llg::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what();
        if (e.step >= 0) std::cerr << " (step " << e.step << ")";
        std::cerr << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
