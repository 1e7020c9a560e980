// Test-only oracles, kept independent of the implementation paths they check.
#pragma once

#include "llg/assembly.hpp"
#include "llg/mesh.hpp"

#include <Eigen/Dense>

#include <random>

namespace llg::test {

/// Exact integral of x^a y^b over the reference triangle {x,y >= 0, x+y <= 1}:
/// a! b! / (a+b+2)!.
inline double reference_monomial_integral(int a, int b) {
    auto factorial = [](int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}

/// Exact integral of products of barycentric coordinates over an element of
/// area |K|: 2 |K| a! b! c! / (a+b+c+2)! for lambda_0^a lambda_1^b lambda_2^c.
inline double barycentric_product_integral(double area, int a, int b, int c) {
    auto factorial = [](int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };
    return 2.0 * area * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
}

/// Cross-form assembly from the closed-form trilinear integrals (no quadrature).
inline Eigen::MatrixXd dense_cross_form_oracle(const Mesh& mesh, const NodalField& w) {
    const int n = 3 * mesh.n_vertices();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    auto skew = [](const Eigen::Vector3d& v) {
        Eigen::Matrix3d s;
        s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
        return s;
    };
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double area = triangle_area(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
                for (int k = 0; k < 3; ++k) {
                    int counts[3] = {0, 0, 0};
                    ++counts[i];
                    ++counts[j];
                    ++counts[k];
                    weighted += barycentric_product_integral(area, counts[0], counts[1],
                                                             counts[2]) *
                                w[tri[k]];
                }
                B.block<3, 3>(3 * tri[i], 3 * tri[j]) += skew(weighted);
            }
    }
    return B;
}

/// Saddle-point (Lagrange multiplier) solve of the tangent-space problem: one
/// multiplier per node enforcing anchor(z) . v(z) = 0.
inline Eigen::VectorXd kkt_tangent_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                         const std::vector<Eigen::Vector3d>& anchors) {
    const int m = static_cast<int>(anchors.size());
    const int n = 3 * m;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + m, n + m);
    K.topLeftCorner(n, n) = A;
    for (int z = 0; z < m; ++z)
        for (int c = 0; c < 3; ++c) {
            K(n + z, 3 * z + c) = anchors[z][c];
            K(3 * z + c, n + z) = anchors[z][c];
        }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m);
    rhs.head(n) = b;
    return K.fullPivLu().solve(rhs).head(n);
}

inline NodalField random_field(MeshPtr mesh, std::mt19937& rng, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    NodalField f(std::move(mesh));
    for (int z = 0; z < f.size(); ++z)
        f[z] = Eigen::Vector3d(dist(rng), dist(rng), dist(rng));
    return f;
}

inline NodalField random_unit_field(MeshPtr mesh, std::mt19937& rng) {
    NodalField f = random_field(std::move(mesh), rng);
    for (auto& v : f.values) v.normalize();
    return f;
}

inline MeshPtr single_reference_triangle() {
    auto mesh = std::make_shared<Mesh>();
    mesh->vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    mesh->triangles = {{0, 1, 2}};
    mesh->h = std::sqrt(2.0);
    return mesh;
}

}  // namespace llg::test
