#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llg/tangent.hpp"

#include "oracles.hpp"

#include <random>

using namespace llg;

namespace {

NodalField constant_field(MeshPtr mesh, const Eigen::Vector3d& v) {
    NodalField f(std::move(mesh));
    for (auto& x : f.values) x = v;
    return f;
}

}  // namespace

TEST_CASE("frame for an axis-aligned anchor") {
    const auto mesh = test::single_reference_triangle();
    const auto frame = build_tangent_frame(constant_field(mesh, {0, 0, 1}));
    // |a.e1| = |a.e2| = 0 ties; smallest index wins: t1 = normalize((0,0,1) x e1)
    CHECK((frame.t1[0] - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);
    CHECK((frame.t2[0] - Eigen::Vector3d(-1, 0, 0)).norm() < 1e-15);
    // right-handed: t1 x t2 = anchor
    CHECK((frame.t1[0].cross(frame.t2[0]) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
}

TEST_CASE("frame orthonormality for oblique and random anchors") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    const auto oblique = build_tangent_frame(
        constant_field(mesh, Eigen::Vector3d(1, 1, 1) / std::sqrt(3.0)));
    std::mt19937 rng(31);
    const auto random = build_tangent_frame(test::random_unit_field(mesh, rng));
    for (const auto* frame : {&oblique, &random}) {
        for (int z = 0; z < frame->size(); ++z) {
            const auto& a = frame->anchor[z];
            CHECK(std::abs(frame->t1[z].dot(a)) < 1e-14);
            CHECK(std::abs(frame->t2[z].dot(a)) < 1e-14);
            CHECK(std::abs(frame->t1[z].dot(frame->t2[z])) < 1e-14);
            CHECK(frame->t1[z].norm() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(frame->t2[z].norm() == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("degenerate anchor is an explicit error naming the node") {
    const auto mesh = test::single_reference_triangle();
    NodalField anchor = constant_field(mesh, {0, 1, 0});
    anchor[1] = Eigen::Vector3d::Zero();
    CHECK_THROWS_AS(build_tangent_frame(anchor), DegenerateAnchorError);
    try {
        build_tangent_frame(anchor);
    } catch (const DegenerateAnchorError& e) {
        CHECK(e.node == 1);
    }
}

TEST_CASE("prolongation columns are orthonormal") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 1);
    std::mt19937 rng(5);
    const auto frame = build_tangent_frame(test::random_unit_field(mesh, rng));
    const SparseMat e = frame_prolongation(frame);
    const Eigen::MatrixXd gram = Eigen::MatrixXd(e.transpose() * e);
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-14);
}

TEST_CASE("homogeneous right-hand side gives the zero velocity") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 1);
    const FemContext fem = make_fem_context(mesh);
    std::mt19937 rng(13);
    const auto frame = build_tangent_frame(test::random_unit_field(mesh, rng));
    const SparseMat a = 0.25 * fem.mass3 + 0.1 * fem.stiffness3;
    const NodalField v = solve_in_tangent_space(
        frame, a, Eigen::VectorXd::Zero(3 * mesh->n_vertices()), {});
    for (const auto& x : v.values) CHECK(x.norm() == 0.0);
}

TEST_CASE("reduced solve matches the dense saddle-point oracle") {
    std::mt19937 rng(101);
    for (int level : {0, 1, 2}) {  // 4, 9 and 25 nodes
        const auto mesh = build_structured_mesh(SquareDomain::unit(), level);
        const FemContext fem = make_fem_context(mesh);
        for (int trial = 0; trial < 5; ++trial) {
            const NodalField anchor = test::random_unit_field(mesh, rng);
            const NodalField w = test::random_field(mesh, rng);
            const SparseMat a_full = 0.25 * fem.mass3 + assemble_cross_form(*mesh, w) +
                                     0.05 * fem.stiffness3;
            const Eigen::VectorXd rhs = test::random_field(mesh, rng).flatten();

            const auto frame = build_tangent_frame(anchor);
            LinearSolveConfig cfg;
            cfg.rel_tolerance = 1e-13;
            const Eigen::VectorXd reduced =
                solve_in_tangent_space(frame, a_full, rhs, cfg).flatten();
            const Eigen::VectorXd kkt =
                test::kkt_tangent_solve(Eigen::MatrixXd(a_full), rhs, anchor.values);
            CHECK((reduced - kkt).norm() < 1e-10 * (1.0 + kkt.norm()));
        }
    }
}

TEST_CASE("output is nodewise orthogonal to the anchor") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    const FemContext fem = make_fem_context(mesh);
    std::mt19937 rng(41);
    const NodalField anchor = test::random_unit_field(mesh, rng);
    const auto frame = build_tangent_frame(anchor);
    const SparseMat a = 0.25 * fem.mass3 + assemble_cross_form(*mesh, anchor) +
                        0.01 * fem.stiffness3;
    const Eigen::VectorXd rhs = fem.mass3 * test::random_field(mesh, rng).flatten();
    const NodalField v = solve_in_tangent_space(frame, a, rhs, {});
    double vmax = 0.0;
    for (const auto& x : v.values) vmax = std::max(vmax, x.norm());
    for (int z = 0; z < v.size(); ++z)
        CHECK(std::abs(v[z].dot(anchor[z])) <= 1e-12 * std::max(1e-30, vmax));
}

TEST_CASE("reduced system keeps the symmetric/skew split") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 1);
    const FemContext fem = make_fem_context(mesh);
    std::mt19937 rng(59);
    const NodalField anchor = test::random_unit_field(mesh, rng);
    const auto frame = build_tangent_frame(anchor);
    const SparseMat e = frame_prolongation(frame);

    const Eigen::MatrixXd mass_red = Eigen::MatrixXd(e.transpose() * fem.mass3 * e);
    CHECK((mass_red - mass_red.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mass_red);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);

    const NodalField w = test::random_field(mesh, rng);
    const Eigen::MatrixXd cross_red =
        Eigen::MatrixXd(e.transpose() * assemble_cross_form(*mesh, w) * e);
    const double scale = std::max(1e-30, cross_red.cwiseAbs().maxCoeff());
    CHECK((cross_red + cross_red.transpose()).cwiseAbs().maxCoeff() < 1e-13 * scale);
}

TEST_CASE("field parallel to a constant anchor annihilates the tangent right-hand side") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    const FemContext fem = make_fem_context(mesh);
    const NodalField m0 = constant_field(mesh, {0, 1, 0});
    const NodalField f = constant_field(mesh, {0, 2.5, 0});  // parallel to m0
    const auto frame = build_tangent_frame(m0);
    const SparseMat a = 0.25 * fem.mass3 + assemble_cross_form(*mesh, m0) +
                        0.01 * fem.stiffness3;
    // grad m0 = 0, so the full right-hand side is just the mass term of f
    const NodalField v = solve_in_tangent_space(frame, a, fem.mass3 * f.flatten(), {});
    for (const auto& x : v.values) CHECK(x.norm() == 0.0);
}
