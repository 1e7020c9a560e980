#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llg/assembly.hpp"
#include "llg/errors.hpp"
#include "llg/problems.hpp"

#include <cmath>
#include <random>

using namespace llg;

TEST_CASE("radial benchmark") {
    const auto bench = radial_field_problem(0.01);
    CHECK((bench.applied_field({0.6, 0.8}, 0.0) - Eigen::Vector3d(0.6, 0.8, 0)).norm() < 1e-15);
    CHECK(bench.applied_field({0.0, 0.0}, 0.0).norm() == 0.0);  // corner convention
    CHECK((bench.m0({0.3, 0.7}, 0.0) - Eigen::Vector3d(0, 1, 0)).norm() == 0.0);
    CHECK(bench.field_constant_in_time);
    CHECK(bench.alpha == 0.25);
    CHECK(bench.final_time == 1.0);

    // the corner where the field direction is undefined is a mesh vertex
    const auto mesh = bench.build_mesh(3);
    bool corner_is_vertex = false;
    for (const auto& v : mesh->vertices)
        if (v == Eigen::Vector2d(0.0, 0.0)) corner_is_vertex = true;
    CHECK(corner_is_vertex);

    CHECK_THROWS_AS(radial_field_problem(0.0), ConfigError);
}

TEST_CASE("prescribed-solution benchmark: unit modulus and pointwise values") {
    const auto bench = manufactured_problem();
    REQUIRE(bench.exact_solution.has_value());
    const auto& exact = *bench.exact_solution;

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Vector2d x(unit(rng), unit(rng));
        const double t = bench.final_time * unit(rng);
        CHECK(std::abs(exact(x, t).norm() - 1.0) < 1e-12);
    }

    // x1 = 0: profile value 1/4, state (0, sqrt(15)/4, -1/4) at t = 0
    const Eigen::Vector3d m00 = exact({0.0, 0.37}, 0.0);
    CHECK(m00.x() == doctest::Approx(0.0));
    CHECK(m00.y() == doctest::Approx(std::sqrt(15.0) / 4.0).epsilon(1e-14));
    CHECK(m00.z() == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("prescribed-solution benchmark: field closes the dynamics (finite differences)") {
    const auto bench = manufactured_problem();
    const auto& exact = *bench.exact_solution;
    const double lambda_sq = bench.lambda_ex_sq;
    const double alpha = bench.alpha;

    const double dt = 1e-5;
    const double dx = 3e-4;
    double max_rel = 0.0;
    double scale = 0.0;
    for (int ix = 0; ix < 10; ++ix)
        for (int iy = 0; iy < 3; ++iy)
            for (int it = 1; it < 10; ++it) {
                const Eigen::Vector2d x(0.05 + 0.1 * ix, 0.05 + 0.3 * iy);
                const double t = bench.final_time * it / 10.0;

                const Eigen::Vector3d m = exact(x, t);
                const Eigen::Vector3d mt =
                    (exact(x, t + dt) - exact(x, t - dt)) / (2.0 * dt);
                Eigen::Vector3d lap = Eigen::Vector3d::Zero();
                for (int d = 0; d < 2; ++d) {
                    Eigen::Vector2d e = Eigen::Vector2d::Zero();
                    e[d] = dx;
                    lap += (exact(x + e, t) - 2.0 * m + exact(x - e, t)) / (dx * dx);
                }
                const Eigen::Vector3d f_fd = alpha * mt + m.cross(mt) - lambda_sq * lap;
                const Eigen::Vector3d f = bench.applied_field(x, t);
                scale = std::max(scale, f.norm());
                max_rel = std::max(max_rel, (f - f_fd).norm());
            }
    CHECK(max_rel / scale < 1e-6);
}

TEST_CASE("blow-up benchmark: datum values, seam continuity, unit modulus") {
    const auto bench = blowup_problem();
    CHECK((bench.m0({0.0, 0.0}, 0.0) - Eigen::Vector3d(0, 0, 1)).norm() == 0.0);

    // both branches agree on |x| = 1/2
    const Eigen::Vector2d seam(0.3, std::sqrt(0.25 - 0.09));
    CHECK((bench.m0(seam, 0.0) - Eigen::Vector3d(0, 0, -1)).norm() < 1e-12);
    CHECK((bench.m0({0.49, 0.49}, 0.0) - Eigen::Vector3d(0, 0, -1)).norm() == 0.0);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coord(-0.5, 0.5);
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Vector2d x(coord(rng), coord(rng));
        CHECK(std::abs(bench.m0(x, 0.0).norm() - 1.0) < 1e-12);
    }

    CHECK(bench.applied_field({0.1, 0.2}, 0.0).norm() == 0.0);
    CHECK(bench.lambda_ex_sq == 1.0);
    CHECK(bench.final_time == 0.3);
}

TEST_CASE("every benchmark datum has unit modulus at random sample points") {
    std::mt19937 rng(123);
    for (const auto& bench :
         {radial_field_problem(0.01), manufactured_problem(), blowup_problem()}) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 100000; ++trial) {
            const Eigen::Vector2d x = bench.domain.lower +
                                      Eigen::Vector2d(u(rng), u(rng)) * bench.domain.side;
            CHECK(std::abs(bench.m0(x, 0.0).norm() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("blow-up datum: interpolated gradient magnitude matches finite differences") {
    const auto bench = blowup_problem();
    const auto mesh = bench.build_mesh(5);
    const auto problem = bench.make(mesh);
    const FemContext fem = make_fem_context(mesh);
    const FieldNorms norms = field_norms(fem, problem.m0);

    // finite-difference gradient of the analytic datum at element centroids
    double fd_max = 0.0;
    const double dx = 1e-6;
    for (int t = 0; t < mesh->n_triangles(); ++t) {
        const auto& tri = mesh->triangles[t];
        const Eigen::Vector2d c =
            (mesh->vertices[tri[0]] + mesh->vertices[tri[1]] + mesh->vertices[tri[2]]) / 3.0;
        Eigen::Matrix<double, 3, 2> grad;
        for (int d = 0; d < 2; ++d) {
            Eigen::Vector2d e = Eigen::Vector2d::Zero();
            e[d] = dx;
            grad.col(d) = (bench.m0(c + e, 0.0) - bench.m0(c - e, 0.0)) / (2.0 * dx);
        }
        fd_max = std::max(fd_max, grad.norm());
    }

    // the initial gradient peak is of order ten; interpolation stays within a factor
    CHECK(norms.w1inf_semi > 5.0);
    CHECK(norms.w1inf_semi < 100.0);
    CHECK(norms.w1inf_semi > 0.5 * fd_max);
    CHECK(norms.w1inf_semi < 2.0 * fd_max);
}

TEST_CASE("lookup by name") {
    CHECK(benchmark_by_name("radial", 0.1).lambda_ex_sq == 0.1);
    CHECK(benchmark_by_name("manufactured").name == "manufactured");
    CHECK(benchmark_by_name("blowup").name == "blowup");
    CHECK_THROWS_AS(benchmark_by_name("nonsense"), ConfigError);
}
