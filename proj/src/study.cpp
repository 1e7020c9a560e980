#include "llg/study.hpp"

#include "llg/csv.hpp"
#include "llg/observables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

namespace llg {

namespace {

// Runs fn(0..n-1) on up to `jobs` worker threads; on failure rethrows the
// exception of the lowest failing index so error reporting is deterministic.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : workers) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::filesystem::path ensure_out_dir(const StudyConfig& cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw ConfigError("output directory not writable: " + cfg.out_dir);
    return dir;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    return out;
}

int steps_for_tau(double final_time, double tau) {
    // Keeps tau exact; the run may stop at N*tau <= T when tau does not divide T.
    const double ratio = final_time / tau;
    const double rounded = std::round(ratio);
    const int n = std::abs(ratio - rounded) < 1e-9 ? static_cast<int>(rounded)
                                                   : static_cast<int>(std::floor(ratio + 1e-9));
    return std::max(1, n);
}

SolverConfig base_solver_config(const StudyConfig& cfg, const BenchmarkProblem& bench) {
    SolverConfig sc;
    sc.alpha = std::isnan(cfg.alpha) ? bench.alpha : cfg.alpha;
    sc.lambda_ex_sq = std::isnan(cfg.lambda_sq) ? bench.lambda_ex_sq : cfg.lambda_sq;
    sc.final_time = std::isnan(cfg.final_time) ? bench.final_time : cfg.final_time;
    sc.linear = cfg.solver;
    sc.tps_field_lagged = cfg.tps_field_lagged;
    return sc;
}

BenchmarkProblem resolve_bench(const StudyConfig& cfg) {
    const double lambda = std::isnan(cfg.lambda_sq) ? 0.01 : cfg.lambda_sq;
    return benchmark_by_name(cfg.problem, lambda);
}

MeshFamily family_or(const StudyConfig& cfg, MeshFamily fallback) {
    if (cfg.mesh_family.empty()) return fallback;
    if (cfg.mesh_family == "halved") return MeshFamily::HalvedSquare;
    if (cfg.mesh_family == "crisscross") return MeshFamily::CrissCross;
    throw ConfigError("unknown mesh family: " + cfg.mesh_family +
                      " (expected halved|crisscross)");
}

std::vector<Scheme> schemes_or(const StudyConfig& cfg, std::vector<Scheme> fallback) {
    return cfg.schemes.empty() ? std::move(fallback) : cfg.schemes;
}

double eoc_or_nan(const std::vector<double>& errors, std::size_t k) {
    if (k + 1 >= errors.size()) return std::nan("");
    if (!(errors[k] > 0.0) || !(errors[k + 1] > 0.0)) return std::nan("");
    return std::log2(errors[k] / errors[k + 1]);
}

void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows) {
    auto out = open_csv(path);
    out << "resolution,error_l2,error_h1,eoc_l2,eoc_h1\n";
    for (const auto& r : rows)
        out << fmt_g17(r.resolution) << ',' << fmt_g17(r.error_l2) << ',' << fmt_g17(r.error_h1)
            << ',' << fmt_g17(r.eoc_l2) << ',' << fmt_g17(r.eoc_h1) << '\n';
}

std::vector<double> bisection_ladder(double tau0, int count) {
    std::vector<double> taus(count);
    for (int k = 0; k < count; ++k) taus[k] = std::ldexp(tau0, -k);
    return taus;
}

}  // namespace

double eval_tau_rule(const std::string& rule, double h) {
    // exponent forms: h, h^2, h^2.5, h^(3/2); optional leading c* and trailing /c
    static const std::regex pattern(
        R"(^\s*(?:([0-9.eE+\-]+)\s*\*\s*)?h(?:\^(?:([0-9.]+)|\(([0-9.]+)/([0-9.]+)\)))?(?:\s*/\s*([0-9.eE+\-]+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(rule, m, pattern))
        throw ConfigError("cannot parse tau rule: " + rule + " (expected c*h^a or h^a/c)");
    const double coeff = m[1].matched ? std::stod(m[1]) : 1.0;
    double exponent = 1.0;
    if (m[2].matched) exponent = std::stod(m[2]);
    if (m[3].matched) exponent = std::stod(m[3]) / std::stod(m[4]);
    const double divisor = m[5].matched ? std::stod(m[5]) : 1.0;
    if (divisor == 0.0) throw ConfigError("tau rule divides by zero");
    const double tau = coeff * std::pow(h, exponent) / divisor;
    if (!(tau > 0.0)) throw ConfigError("tau rule yields nonpositive tau");
    return tau;
}

RunSetup resolve_run(const StudyConfig& cfg) {
    RunSetup setup{resolve_bench(cfg), nullptr, {}, {}};
    const int level = cfg.level >= 0 ? cfg.level : 3;
    setup.mesh = setup.bench.build_mesh(level, family_or(cfg, MeshFamily::HalvedSquare));
    setup.problem = setup.bench.make(setup.mesh);
    setup.solver = base_solver_config(cfg, setup.bench);

    if (cfg.steps > 0) {
        setup.solver.steps = cfg.steps;
    } else {
        double tau = 0.0;
        if (!cfg.taus.empty())
            tau = cfg.taus.front();
        else if (!cfg.tau_rule.empty())
            tau = eval_tau_rule(cfg.tau_rule, setup.mesh->h);
        else
            throw ConfigError("run: give --steps, --tau or --tau-rule");
        if (!(tau > 0.0)) throw ConfigError("run: tau must be positive");
        const int n = steps_for_tau(setup.solver.final_time, tau);
        setup.solver.steps = n;
        setup.solver.final_time = n * tau;
    }
    setup.solver.scheme = schemes_or(cfg, {Scheme::Bdf2}).front();
    return setup;
}

Trajectory cmd_run(const StudyConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    RunSetup setup = resolve_run(cfg);
    validate(setup.solver);
    Trajectory traj = run_simulation(setup.problem, setup.solver);

    {
        auto out = open_csv(dir / "trajectory.csv");
        write_trajectory_csv(traj, out);
    }
    {
        auto out = open_csv(dir / "summary.csv");
        const auto cfl = cfl_indicator(traj);
        out << "key,value\n";
        out << "problem," << setup.bench.name << '\n';
        out << "scheme," << scheme_name(traj.scheme) << '\n';
        out << "steps," << traj.n_steps() << '\n';
        out << "tau," << fmt_g17(traj.tau) << '\n';
        out << "h," << fmt_g17(traj.mesh->h) << '\n';
        out << "final_energy," << fmt_g17(traj.records.back().energy) << '\n';
        out << "max_energy_identity_residual," << fmt_g17(traj.max_identity_residual) << '\n';
        out << "constraint_law_max_residual," << fmt_g17(traj.constraint_law_max_residual) << '\n';
        out << "min_nodal_modulus," << fmt_g17(traj.min_nodal_modulus) << '\n';
        out << "final_nodal_l1_dev," << fmt_g17(traj.records.back().nodal_l1_dev) << '\n';
        out << "eta0," << fmt_g17(cfl.eta0) << '\n';
        out << "eta_n," << fmt_g17(cfl.eta_n) << '\n';
        out << "cfl_C," << fmt_g17(cfl.C) << '\n';
        out << "v0_norm_sq," << fmt_g17(traj.v0_norm_sq) << '\n';
        out << "d2_sum," << fmt_g17(traj.d2_sum) << '\n';
    }
    return traj;
}

std::vector<ConvergenceRow> cmd_convergence_time(const StudyConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const BenchmarkProblem bench = resolve_bench(cfg);
    // the original fixed-mesh time study runs on the 64-triangle criss-cross mesh
    const bool radial = bench.name == "radial";
    const MeshFamily family =
        family_or(cfg, radial ? MeshFamily::CrissCross : MeshFamily::HalvedSquare);
    const int level = cfg.level >= 0 ? cfg.level : (radial ? 2 : 4);
    const MeshPtr mesh = bench.build_mesh(level, family);
    const Problem problem = bench.make(mesh);
    SolverConfig base = base_solver_config(cfg, bench);
    base.scheme = schemes_or(cfg, {Scheme::Bdf2}).front();
    const bool analytic = bench.exact_solution.has_value();

    const int bisections = cfg.bisections >= 0 ? cfg.bisections : (cfg.full ? 6 : 4);
    const double tau0 = !cfg.taus.empty()
                            ? cfg.taus.front()
                            : (bench.name == "manufactured" ? 0.064 : 4e-3);
    // Step counts double along the ladder so the reference nodes contain all
    // coarse nodes exactly.
    const int n0 = steps_for_tau(base.final_time, tau0);
    const int ladder = bisections + 1;

    std::vector<Trajectory> runs(ladder);
    parallel_for(ladder, cfg.jobs, [&](int k) {
        SolverConfig sc = base;
        sc.steps = n0 << k;
        sc.store_trajectory = analytic;
        runs[k] = run_simulation(problem, sc);
    });

    Trajectory reference;
    if (!analytic) {
        SolverConfig sc = base;
        sc.steps = n0 << (bisections + 2);
        sc.store_trajectory = false;
        reference = run_simulation(problem, sc);
    }

    std::vector<ConvergenceRow> rows(ladder);
    for (int k = 0; k < ladder; ++k) {
        rows[k].resolution = runs[k].tau;
        if (analytic) {
            rows[k].error_l2 = error_vs_analytic(runs[k], *bench.exact_solution, ErrorNorm::L2Max);
            rows[k].error_h1 = error_vs_analytic(runs[k], *bench.exact_solution, ErrorNorm::H1Max);
        } else {
            rows[k].error_l2 = error_vs_reference(runs[k], reference, ErrorNorm::L2Final);
            rows[k].error_h1 = error_vs_reference(runs[k], reference, ErrorNorm::H1Final);
        }
    }
    std::vector<double> e_l2(ladder), e_h1(ladder);
    for (int k = 0; k < ladder; ++k) {
        e_l2[k] = rows[k].error_l2;
        e_h1[k] = rows[k].error_h1;
    }
    for (int k = 0; k < ladder; ++k) {
        rows[k].eoc_l2 = eoc_or_nan(e_l2, k);
        rows[k].eoc_h1 = eoc_or_nan(e_h1, k);
    }
    write_convergence_csv(dir / "conv_time.csv", rows);
    return rows;
}

std::vector<ConvergenceRow> cmd_convergence_space(const StudyConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const BenchmarkProblem bench = resolve_bench(cfg);
    if (family_or(cfg, MeshFamily::HalvedSquare) != MeshFamily::HalvedSquare)
        throw ConfigError("conv-space: only the halved-square family refines in-family");
    const bool analytic = bench.exact_solution.has_value();

    std::vector<int> levels = cfg.levels;
    if (levels.empty()) {
        if (analytic)
            levels = {1, 2, 3, 4};
        else if (cfg.full)
            levels = {2, 3, 4, 5, 6};
        else
            levels = {2, 3, 4, 5};
    }
    if (levels.size() < 2) throw ConfigError("conv-space: need at least two levels");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] != levels[i - 1] + 1)
            throw ConfigError("conv-space: levels must increase by one (nested ladder)");

    SolverConfig base = base_solver_config(cfg, bench);
    base.scheme = schemes_or(cfg, {Scheme::Bdf2}).front();
    const double tau = !cfg.taus.empty() ? cfg.taus.front() : (analytic ? 5e-4 : 4e-3);
    base.steps = steps_for_tau(base.final_time, tau);
    base.final_time = base.steps * tau;

    const int n_levels = static_cast<int>(levels.size());
    std::vector<Trajectory> runs(n_levels);
    parallel_for(n_levels, cfg.jobs, [&](int i) {
        const MeshPtr mesh = bench.build_mesh(levels[i]);
        SolverConfig sc = base;
        sc.store_trajectory = analytic;
        runs[i] = run_simulation(bench.make(mesh), sc);
    });

    Trajectory reference;
    if (!analytic) {
        // one extra refinement under --full matches the original ladder's
        // reference mesh; two at desk scale keeps the reference well separated
        const int ref_level = levels.back() + (cfg.full ? 1 : 2);
        SolverConfig sc = base;
        sc.store_trajectory = false;
        reference = run_simulation(bench.make(bench.build_mesh(ref_level)), sc);
    }

    std::vector<ConvergenceRow> rows(n_levels);
    for (int i = 0; i < n_levels; ++i) {
        rows[i].resolution = runs[i].mesh->h;
        if (analytic) {
            rows[i].error_l2 = error_vs_analytic(runs[i], *bench.exact_solution, ErrorNorm::L2Max);
            rows[i].error_h1 = error_vs_analytic(runs[i], *bench.exact_solution, ErrorNorm::H1Max);
        } else {
            rows[i].error_l2 = error_vs_reference(runs[i], reference, ErrorNorm::L2Final);
            rows[i].error_h1 = error_vs_reference(runs[i], reference, ErrorNorm::H1Final);
        }
    }
    std::vector<double> e_l2(n_levels), e_h1(n_levels);
    for (int i = 0; i < n_levels; ++i) {
        e_l2[i] = rows[i].error_l2;
        e_h1[i] = rows[i].error_h1;
    }
    for (int i = 0; i < n_levels; ++i) {
        rows[i].eoc_l2 = eoc_or_nan(e_l2, i);
        rows[i].eoc_h1 = eoc_or_nan(e_h1, i);
    }

    {
        auto out = open_csv(dir / "conv_space.csv");
        out << "resolution,error_l2,error_h1,eoc_l2,eoc_h1,stagnated_l2,stagnated_h1\n";
        // stagnation onset: first level whose EOC drops below half the target rate
        bool stag_l2 = false, stag_h1 = false;
        for (int i = 0; i < n_levels; ++i) {
            stag_l2 = stag_l2 || (!std::isnan(rows[i].eoc_l2) && rows[i].eoc_l2 < 1.0);
            stag_h1 = stag_h1 || (!std::isnan(rows[i].eoc_h1) && rows[i].eoc_h1 < 0.5);
            out << fmt_g17(rows[i].resolution) << ',' << fmt_g17(rows[i].error_l2) << ','
                << fmt_g17(rows[i].error_h1) << ',' << fmt_g17(rows[i].eoc_l2) << ','
                << fmt_g17(rows[i].eoc_h1) << ',' << (stag_l2 ? 1 : 0) << ',' << (stag_h1 ? 1 : 0)
                << '\n';
        }
    }
    return rows;
}

std::vector<ConstraintRow> cmd_constraint_study(const StudyConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const BenchmarkProblem bench = resolve_bench(cfg);
    // first test case reuses the 64-triangle time-study mesh, the second the
    // level-4 halved-square mesh (h = 2^-4 sqrt(2))
    const bool radial = bench.name == "radial";
    const MeshFamily family =
        family_or(cfg, radial ? MeshFamily::CrissCross : MeshFamily::HalvedSquare);
    const int level = cfg.level >= 0 ? cfg.level : (radial ? 2 : 4);
    const MeshPtr mesh = bench.build_mesh(level, family);
    const Problem problem = bench.make(mesh);
    SolverConfig base = base_solver_config(cfg, bench);

    const int default_full = bench.name == "manufactured" ? 9 : 6;
    const int bisections = cfg.bisections >= 0 ? cfg.bisections : (cfg.full ? default_full : 4);
    const double tau0 = !cfg.taus.empty()
                            ? cfg.taus.front()
                            : (bench.name == "manufactured" ? 0.064 : 4e-3);
    const std::vector<double> taus =
        cfg.taus.size() > 1 ? cfg.taus : bisection_ladder(tau0, bisections + 1);
    const int ladder = static_cast<int>(taus.size());

    const std::vector<Scheme> schemes = schemes_or(cfg, {Scheme::Bdf2, Scheme::Tps});
    struct Cell {
        double dev = std::nan("");
        double d2 = std::nan("");
        double v0 = std::nan("");
    };
    std::vector<std::vector<Cell>> cells(schemes.size(), std::vector<Cell>(ladder));

    parallel_for(ladder * static_cast<int>(schemes.size()), cfg.jobs, [&](int idx) {
        const int k = idx % ladder;
        const int s = idx / ladder;
        SolverConfig sc = base;
        sc.scheme = schemes[s];
        sc.steps = steps_for_tau(base.final_time, taus[k]);
        sc.final_time = sc.steps * taus[k];
        sc.store_trajectory = false;
        const Trajectory traj = run_simulation(problem, sc);
        cells[s][k] = Cell{traj.records.back().nodal_l1_dev, traj.d2_sum, traj.v0_norm_sq};
    });

    std::vector<ConstraintRow> rows(ladder);
    for (int k = 0; k < ladder; ++k) rows[k].tau = taus[k];
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        std::vector<double> devs(ladder);
        for (int k = 0; k < ladder; ++k) devs[k] = cells[s][k].dev;
        for (int k = 0; k < ladder; ++k) {
            if (schemes[s] == Scheme::Bdf2) {
                rows[k].dev_bdf2 = cells[s][k].dev;
                rows[k].d2_bdf2 = cells[s][k].d2;
                rows[k].eoc_bdf2 = eoc_or_nan(devs, k);
            } else if (schemes[s] == Scheme::Tps) {
                rows[k].dev_tps = cells[s][k].dev;
                rows[k].d2_tps = cells[s][k].d2;
                rows[k].eoc_tps = eoc_or_nan(devs, k);
            }
            rows[k].v0_norm_sq = cells[s][k].v0;  // first step is scheme-independent
        }
    }

    {
        auto out = open_csv(dir / "constraint.csv");
        out << "tau,dev_bdf2,eoc_bdf2,dev_tps,eoc_tps,v0_norm_sq,d2_bdf2,d2_tps\n";
        for (const auto& r : rows)
            out << fmt_g17(r.tau) << ',' << fmt_g17(r.dev_bdf2) << ',' << fmt_g17(r.eoc_bdf2)
                << ',' << fmt_g17(r.dev_tps) << ',' << fmt_g17(r.eoc_tps) << ','
                << fmt_g17(r.v0_norm_sq) << ',' << fmt_g17(r.d2_bdf2) << ','
                << fmt_g17(r.d2_tps) << '\n';
    }
    return rows;
}

std::vector<CflRow> cmd_cfl_study(const StudyConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const BenchmarkProblem bench = resolve_bench(cfg);
    // coarse/fine meshes of the indicator study: criss-cross level 3 and 5
    // (256 and 4096 elements, h = 0.125 and 0.03125)
    const MeshFamily family = family_or(cfg, MeshFamily::CrissCross);
    const int level = cfg.level >= 0 ? cfg.level : 3;
    const MeshPtr mesh = bench.build_mesh(level, family);
    const Problem problem = bench.make(mesh);
    SolverConfig base = base_solver_config(cfg, bench);
    base.scheme = schemes_or(cfg, {Scheme::Bdf2}).front();

    const double h = mesh->h;
    std::vector<double> taus = cfg.taus;
    if (taus.empty()) {
        if (cfg.tau_rule == "powers")
            taus = {std::sqrt(h), h, std::pow(h, 1.5), h * h, std::pow(h, 2.5)};
        else if (cfg.tau_rule.empty() || cfg.tau_rule == "fractions")
            taus = {h, h / 2.0, h / 5.0, h / 10.0, h / 50.0, h / 100.0};
        else
            taus = {eval_tau_rule(cfg.tau_rule, h)};
    }

    const int ladder = static_cast<int>(taus.size());
    std::vector<CflRow> rows(ladder);
    parallel_for(ladder, cfg.jobs, [&](int k) {
        SolverConfig sc = base;
        sc.steps = std::max(2, steps_for_tau(base.final_time, taus[k]));
        sc.final_time = sc.steps * taus[k];
        sc.store_trajectory = false;
        const Trajectory traj = run_simulation(problem, sc);
        const auto c = cfl_indicator(traj);
        rows[k] = CflRow{taus[k], c.eta0, c.eta_n, c.C, false};
    });
    for (int k = 1; k < ladder; ++k) rows[k].decayed = rows[k].C < rows[k - 1].C;

    {
        auto out = open_csv(dir / "cfl.csv");
        out << "tau,eta0,eta_n,C,decayed\n";
        for (const auto& r : rows)
            out << fmt_g17(r.tau) << ',' << fmt_g17(r.eta0) << ',' << fmt_g17(r.eta_n) << ','
                << fmt_g17(r.C) << ',' << (r.decayed ? 1 : 0) << '\n';
    }
    return rows;
}

void load_study_config(const std::string& path, StudyConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line, section = "study";
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (section != "study" && section != "solver")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (section == "solver") {
                if (key == "method") {
                    if (value == "auto") cfg.solver.method = SolveMethod::Auto;
                    else if (value == "dense-direct") cfg.solver.method = SolveMethod::DenseDirect;
                    else if (value == "iterative-krylov") cfg.solver.method = SolveMethod::Krylov;
                    else throw ConfigError("config: unknown solver method " + value);
                } else if (key == "tol") {
                    cfg.solver.rel_tolerance = std::stod(value);
                } else if (key == "maxit") {
                    cfg.solver.max_iterations = std::stoi(value);
                } else if (key == "dense-threshold") {
                    cfg.solver.dense_threshold = std::stoi(value);
                } else {
                    throw ConfigError("config: unknown solver key " + key);
                }
                continue;
            }
            if (key == "problem") cfg.problem = value;
            else if (key == "mesh") cfg.mesh_family = value;
            else if (key == "scheme") {
                cfg.schemes.clear();
                std::istringstream ss(value);
                std::string tok;
                while (ss >> tok) cfg.schemes.push_back(scheme_from_name(tok));
            } else if (key == "level") cfg.level = std::stoi(value);
            else if (key == "levels") {
                cfg.levels.clear();
                std::istringstream ss(value);
                int v;
                while (ss >> v) cfg.levels.push_back(v);
            } else if (key == "tau" || key == "taus") {
                cfg.taus.clear();
                std::istringstream ss(value);
                double v;
                while (ss >> v) cfg.taus.push_back(v);
            } else if (key == "tau-rule") cfg.tau_rule = value;
            else if (key == "bisections") cfg.bisections = std::stoi(value);
            else if (key == "steps") cfg.steps = std::stoi(value);
            else if (key == "alpha") cfg.alpha = std::stod(value);
            else if (key == "lambda-sq") cfg.lambda_sq = std::stod(value);
            else if (key == "final-time") cfg.final_time = std::stod(value);
            else if (key == "out") cfg.out_dir = value;
            else if (key == "jobs") cfg.jobs = std::stoi(value);
            else if (key == "full") cfg.full = (value == "true" || value == "1");
            else if (key == "seed") cfg.seed = static_cast<unsigned>(std::stoul(value));
            else if (key == "tps-field-lagged") cfg.tps_field_lagged = (value == "true" || value == "1");
            else throw ConfigError("config: unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw ConfigError("config: bad value for " + key + " at line " +
                              std::to_string(line_no));
        }
    }
}

}  // namespace llg
