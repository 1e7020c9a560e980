#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llg/assembly.hpp"
#include "llg/errors.hpp"
#include "llg/quadrature.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace llg;

namespace {

double quad_integrate_reference_monomial(const QuadratureRule& rule, int a, int b) {
    // reference triangle has area 1/2; barycentric (l0,l1,l2) -> (x,y) = (l1,l2)
    double sum = 0.0;
    for (const auto& q : rule.points)
        sum += q.weight * std::pow(q.barycentric[1], a) * std::pow(q.barycentric[2], b);
    return 0.5 * sum;
}

}  // namespace

TEST_CASE("quadrature rules are exact up to their declared degree") {
    for (const auto* rule : {&quadrature_degree2(), &quadrature_degree3(), &quadrature_degree4()}) {
        double wsum = 0.0;
        for (const auto& q : rule->points) wsum += q.weight;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
        for (int a = 0; a + 0 <= rule->exactness_degree; ++a)
            for (int b = 0; a + b <= rule->exactness_degree; ++b)
                CHECK(quad_integrate_reference_monomial(*rule, a, b) ==
                      doctest::Approx(test::reference_monomial_integral(a, b)).epsilon(1e-13));
    }
}

TEST_CASE("mass matrix entries on the reference triangle") {
    const auto mesh = test::single_reference_triangle();
    const SparseMat m = assemble_mass(*mesh);
    const Eigen::MatrixXd d(m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(d(i, j) == doctest::Approx(i == j ? 1.0 / 12.0 : 1.0 / 24.0).epsilon(1e-15));
}

TEST_CASE("mass matrix: partition of unity and positive definiteness") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    const SparseMat m = assemble_mass(*mesh);
    CHECK(Eigen::MatrixXd(m).sum() == doctest::Approx(1.0).epsilon(1e-13));

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.rows());
    CHECK(ones.dot(m * ones) == doctest::Approx(1.0).epsilon(1e-13));

    std::mt19937 rng(7);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd x(m.rows());
        for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
        CHECK(x.dot(m * x) > 0.0);
    }
}

TEST_CASE("mass matrix on level 1: <1,1> equals the area") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 1);
    const SparseMat m = assemble_mass(*mesh);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.rows());
    const double area = mesh_stats(*mesh).area;
    CHECK(ones.dot(m * ones) == doctest::Approx(area).epsilon(1e-14));
}

TEST_CASE("stiffness matrix local entries, kernel and row sums") {
    const auto ref = test::single_reference_triangle();
    const Eigen::MatrixXd k(assemble_stiffness(*ref));
    Eigen::Matrix3d expected;
    expected << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
    CHECK((k - expected).cwiseAbs().maxCoeff() < 1e-14);

    const auto mesh = build_structured_mesh(SquareDomain::unit(), 3);
    const SparseMat ks = assemble_stiffness(*mesh);
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(ks.rows(), 3.25);
    CHECK((ks * c).cwiseAbs().maxCoeff() < 1e-13);

    NodalField linear(mesh);
    for (int z = 0; z < linear.size(); ++z)
        linear[z] = Eigen::Vector3d(mesh->vertices[z].x(), 0.0, 0.0);
    const FemContext fem = make_fem_context(mesh);
    CHECK(inner_h1(fem, linear, linear) == doctest::Approx(1.0).epsilon(1e-13));

    std::mt19937 rng(11);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(ks.rows());
        for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
        x.array() -= x.mean();
        CHECK(x.dot(ks * x) > 0.0);
    }
}

TEST_CASE("cross form: zero field, skewness, annihilation") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    NodalField zero(mesh);
    CHECK(assemble_cross_form(*mesh, zero).nonZeros() == 0);

    std::mt19937 rng(3);
    const NodalField w = test::random_field(mesh, rng);
    const SparseMat b = assemble_cross_form(*mesh, w);
    const Eigen::MatrixXd bd(b);
    const double scale = bd.cwiseAbs().maxCoeff();
    CHECK((bd + bd.transpose()).cwiseAbs().maxCoeff() < 1e-14 * scale);

    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd v = test::random_field(mesh, rng).flatten();
        CHECK(std::abs(v.dot(b * v)) < 1e-12 * scale * v.squaredNorm());
    }
}

TEST_CASE("cross form equals the closed-form trilinear integrals") {
    const auto mesh = build_structured_mesh(SquareDomain::centered_unit(), 2);
    std::mt19937 rng(5);
    const NodalField w = test::random_field(mesh, rng);
    const Eigen::MatrixXd quadrature_path(assemble_cross_form(*mesh, w));
    const Eigen::MatrixXd exact_path = test::dense_cross_form_oracle(*mesh, w);
    const double scale = exact_path.cwiseAbs().maxCoeff();
    CHECK((quadrature_path - exact_path).cwiseAbs().maxCoeff() < 1e-13 * scale);
}

TEST_CASE("cross form with constant e3 acts as mass-weighted rotation on one element") {
    const auto mesh = test::single_reference_triangle();
    NodalField w(mesh);
    for (auto& v : w.values) v = Eigen::Vector3d(0, 0, 1);
    const Eigen::MatrixXd b(assemble_cross_form(*mesh, w));
    const Eigen::MatrixXd m(assemble_mass(*mesh));
    Eigen::Matrix3d rot;  // action of e3 x (.)
    rot << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK((b.block<3, 3>(3 * i, 3 * j) - m(i, j) * rot).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("nodal interpolation") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    const NodalField constant = interpolate_nodal(
        [](const Eigen::Vector2d&, double) { return Eigen::Vector3d(0, 1, 0); }, mesh, 0.0);
    for (const auto& v : constant.values) CHECK(v == Eigen::Vector3d(0, 1, 0));

    const auto radial = [](const Eigen::Vector2d& x, double) {
        const double r = x.norm();
        if (r == 0.0) return Eigen::Vector3d(0, 0, 0);
        return Eigen::Vector3d(x.x() / r, x.y() / r, 0.0);
    };
    // node (1,0) exists at level 2
    const NodalField f = interpolate_nodal(radial, mesh, 0.0);
    bool found = false;
    for (int z = 0; z < f.size(); ++z)
        if (mesh->vertices[z] == Eigen::Vector2d(1.0, 0.0)) {
            CHECK((f[z] - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
            found = true;
        }
    CHECK(found);

    CHECK_THROWS_AS(interpolate_nodal(
                        [](const Eigen::Vector2d& x, double) {
                            return Eigen::Vector3d(1.0 / x.norm(), 0, 0);  // inf at the origin
                        },
                        mesh, 0.0),
                    NumericalError);
}

TEST_CASE("field norms") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 3);
    const FemContext fem = make_fem_context(mesh);

    NodalField constant(mesh);
    for (auto& v : constant.values) v = Eigen::Vector3d(0, 1, 0);
    const FieldNorms cn = field_norms(fem, constant);
    CHECK(cn.l2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cn.h1_semi == doctest::Approx(0.0));
    CHECK(cn.linf_nodal == doctest::Approx(1.0));
    CHECK(cn.w1inf_semi == doctest::Approx(0.0));

    NodalField linear(mesh);
    for (int z = 0; z < linear.size(); ++z)
        linear[z] = Eigen::Vector3d(mesh->vertices[z].x(), 0.0, 0.0);
    const FieldNorms ln = field_norms(fem, linear);
    CHECK(ln.h1_semi == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ln.l2 == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(ln.w1inf_semi == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("discrete Lr norm") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    NodalField e1(mesh);
    for (auto& v : e1.values) v = Eigen::Vector3d(1, 0, 0);
    CHECK(discrete_lr_norm(e1, 2.0) == doctest::Approx(std::sqrt(25.0 / 8.0)).epsilon(1e-14));

    NodalField zero(mesh);
    CHECK(discrete_lr_norm(zero, 1.0) == doctest::Approx(0.0));
    CHECK(discrete_lr_norm(zero, 3.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(discrete_lr_norm(zero, 0.5), ConfigError);
}

TEST_CASE("discrete L2 surrogate is equivalent to the L2 norm, uniformly in the level") {
    // a single equivalence constant must cover every refinement level
    std::mt19937 rng(17);
    for (int level = 1; level <= 4; ++level) {
        const auto mesh = build_structured_mesh(SquareDomain::unit(), level);
        const FemContext fem = make_fem_context(mesh);
        double cmax = 1.0;
        for (int trial = 0; trial < 100; ++trial) {
            const NodalField v = test::random_field(mesh, rng);
            const double surrogate = std::pow(discrete_lr_norm(v, 2.0), 2);
            const double l2_sq = inner_l2(fem, v, v);
            cmax = std::max({cmax, surrogate / l2_sq, l2_sq / surrogate});
        }
        CHECK(cmax < 30.0);
    }
}

TEST_CASE("constraint deviation") {
    const auto mesh = build_structured_mesh(SquareDomain::unit(), 2);
    std::mt19937 rng(23);
    const NodalField unit = test::random_unit_field(mesh, rng);
    CHECK(constraint_deviation(unit).nodal_l1 < 1e-14);

    NodalField two(mesh);
    for (auto& v : two.values) v = Eigen::Vector3d(2, 0, 0);
    CHECK(constraint_deviation(two).quadrature_l1 == doctest::Approx(3.0).epsilon(1e-13));
}
