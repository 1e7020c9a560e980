#include "llg/problems.hpp"

#include "llg/errors.hpp"

#include <cmath>

namespace llg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cubic profile of the prescribed solution and its x1-derivatives.
struct Profile {
    double p, dp, ddp;
};

Profile profile(double x1) {
    return {x1 * x1 * x1 - 1.5 * x1 * x1 + 0.25, 3.0 * x1 * x1 - 3.0 * x1, 6.0 * x1 - 3.0};
}

}  // namespace

BenchmarkProblem radial_field_problem(double lambda_ex_sq) {
    if (!(lambda_ex_sq > 0.0)) throw ConfigError("radial_field_problem: lambda_ex_sq must be > 0");
    BenchmarkProblem b;
    b.name = "radial";
    b.domain = SquareDomain::unit();
    b.m0 = [](const Eigen::Vector2d&, double) { return Eigen::Vector3d(0.0, 1.0, 0.0); };
    b.applied_field = [](const Eigen::Vector2d& x, double) {
        const double r = x.norm();
        if (r == 0.0) return Eigen::Vector3d::Zero().eval();  // undefined at the corner node
        return Eigen::Vector3d(x.x() / r, x.y() / r, 0.0);
    };
    b.field_constant_in_time = true;
    b.alpha = 0.25;
    b.lambda_ex_sq = lambda_ex_sq;
    b.final_time = 1.0;
    return b;
}

BenchmarkProblem manufactured_problem() {
    BenchmarkProblem b;
    b.name = "manufactured";
    b.domain = SquareDomain::unit();
    b.alpha = 0.2;
    b.lambda_ex_sq = 1.0;
    b.final_time = 0.2;
    const double omega = 3.0 * kPi / b.final_time;
    const double alpha = b.alpha;
    const double lambda_sq = b.lambda_ex_sq;

    auto exact = [omega](const Eigen::Vector2d& x, double t) {
        const double p = profile(x.x()).p;
        const double q = std::sqrt(1.0 - p * p);
        return Eigen::Vector3d(-p * std::sin(omega * t), q, -p * std::cos(omega * t));
    };
    b.m0 = exact;
    b.exact_solution = exact;

    b.applied_field = [omega, alpha, lambda_sq](const Eigen::Vector2d& x, double t) {
        const auto [p, dp, ddp] = profile(x.x());
        const double q = std::sqrt(1.0 - p * p);
        const double s = std::sin(omega * t);
        const double c = std::cos(omega * t);
        // second x1-derivative of q = sqrt(1 - p^2)
        const double dq2 = -(dp * dp + p * ddp) / q - p * p * dp * dp / (q * q * q);

        const Eigen::Vector3d mt(-p * omega * c, 0.0, p * omega * s);
        const Eigen::Vector3d m_cross_mt(p * q * omega * s, p * p * omega, p * q * omega * c);
        const Eigen::Vector3d laplacian(-ddp * s, dq2, -ddp * c);
        return (alpha * mt + m_cross_mt - lambda_sq * laplacian).eval();
    };
    b.field_constant_in_time = false;
    return b;
}

BenchmarkProblem blowup_problem() {
    BenchmarkProblem b;
    b.name = "blowup";
    b.domain = SquareDomain::centered_unit();
    b.m0 = [](const Eigen::Vector2d& x, double) {
        const double r2 = x.squaredNorm();
        if (r2 >= 0.25) return Eigen::Vector3d(0.0, 0.0, -1.0);
        const double a = std::pow(1.0 - 2.0 * std::sqrt(r2), 4);
        const double denom = a * a + r2;
        return Eigen::Vector3d(2.0 * x.x() * a / denom, 2.0 * x.y() * a / denom,
                               (a * a - r2) / denom);
    };
    b.applied_field = [](const Eigen::Vector2d&, double) { return Eigen::Vector3d::Zero().eval(); };
    b.field_constant_in_time = true;
    b.alpha = 0.25;
    b.lambda_ex_sq = 1.0;
    b.final_time = 0.3;
    return b;
}

BenchmarkProblem benchmark_by_name(const std::string& name, double lambda_ex_sq) {
    if (name == "radial") return radial_field_problem(lambda_ex_sq);
    if (name == "manufactured") return manufactured_problem();
    if (name == "blowup") return blowup_problem();
    throw ConfigError("unknown problem: " + name + " (expected radial|manufactured|blowup)");
}

}  // namespace llg
