#include "llg/assembly.hpp"

#include "llg/errors.hpp"

#include <cmath>
#include <vector>

namespace llg {

namespace {

SparseMat from_triplets(int n, std::vector<Eigen::Triplet<double>>& triplets) {
    SparseMat a(n, n);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.prune(0.0, 0.0);  // drop explicit zeros produced by cancellation
    a.makeCompressed();
    return a;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
    Eigen::Matrix3d s;
    s << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
    return s;
}

}  // namespace

SparseMat assemble_mass(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(9 * mesh.triangles.size());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double a = triangle_area(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                triplets.emplace_back(tri[i], tri[j], a / 12.0 * (i == j ? 2.0 : 1.0));
    }
    return from_triplets(mesh.n_vertices(), triplets);
}

SparseMat assemble_stiffness(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(9 * mesh.triangles.size());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double a = triangle_area(mesh, t);
        const auto g = p1_gradients(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                triplets.emplace_back(tri[i], tri[j], a * g.row(i).dot(g.row(j)));
    }
    return from_triplets(mesh.n_vertices(), triplets);
}

SparseMat assemble_cross_form(const Mesh& mesh, const NodalField& w) {
    if (w.mesh.get() != &mesh)
        throw NumericalError("assemble_cross_form: field lives on a different mesh");
    const auto& rule = quadrature_degree3();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(81 * mesh.triangles.size());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double area = triangle_area(mesh, t);
        const auto& tri = mesh.triangles[t];
        Eigen::Matrix<double, 9, 9> local = Eigen::Matrix<double, 9, 9>::Zero();
        for (const auto& q : rule.points) {
            const Eigen::Vector3d wq = q.barycentric[0] * w[tri[0]] +
                                       q.barycentric[1] * w[tri[1]] +
                                       q.barycentric[2] * w[tri[2]];
            const Eigen::Matrix3d s = skew(wq);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double c = area * q.weight * q.barycentric[i] * q.barycentric[j];
                    local.block<3, 3>(3 * i, 3 * j) += c * s;
                }
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        const double v = local(3 * i + a, 3 * j + b);
                        if (v != 0.0) triplets.emplace_back(3 * tri[i] + a, 3 * tri[j] + b, v);
                    }
    }
    return from_triplets(3 * mesh.n_vertices(), triplets);
}

SparseMat expand_vector3(const SparseMat& scalar) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(3 * scalar.nonZeros());
    for (int k = 0; k < scalar.outerSize(); ++k)
        for (SparseMat::InnerIterator it(scalar, k); it; ++it)
            for (int c = 0; c < 3; ++c)
                triplets.emplace_back(3 * static_cast<int>(it.row()) + c,
                                      3 * static_cast<int>(it.col()) + c, it.value());
    SparseMat a(3 * scalar.rows(), 3 * scalar.cols());
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    return a;
}

FemContext make_fem_context(MeshPtr mesh) {
    FemContext fem;
    fem.mesh = std::move(mesh);
    fem.mass = assemble_mass(*fem.mesh);
    fem.stiffness = assemble_stiffness(*fem.mesh);
    fem.mass3 = expand_vector3(fem.mass);
    fem.stiffness3 = expand_vector3(fem.stiffness);
    return fem;
}

double inner_l2(const FemContext& fem, const NodalField& a, const NodalField& b) {
    const Eigen::VectorXd xa = a.flatten();
    const Eigen::VectorXd xb = b.flatten();
    return xa.dot(fem.mass3 * xb);
}

double inner_h1(const FemContext& fem, const NodalField& a, const NodalField& b) {
    const Eigen::VectorXd xa = a.flatten();
    const Eigen::VectorXd xb = b.flatten();
    return xa.dot(fem.stiffness3 * xb);
}

FieldNorms field_norms(const FemContext& fem, const NodalField& m) {
    FieldNorms n;
    n.l2 = std::sqrt(std::max(0.0, inner_l2(fem, m, m)));
    n.h1_semi = std::sqrt(std::max(0.0, inner_h1(fem, m, m)));
    n.linf_nodal = m.max_nodal_norm();
    const Mesh& mesh = *fem.mesh;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto g = p1_gradients(mesh, t);
        const auto& tri = mesh.triangles[t];
        Eigen::Matrix<double, 3, 2> grad = Eigen::Matrix<double, 3, 2>::Zero();
        for (int i = 0; i < 3; ++i) grad += m[tri[i]] * g.row(i);
        n.w1inf_semi = std::max(n.w1inf_semi, grad.norm());
    }
    return n;
}

double discrete_lr_norm(const NodalField& m, double r) {
    if (r < 1.0) throw ConfigError("discrete_lr_norm: r must be >= 1");
    const double h = m.mesh->h;
    double sum = 0.0;
    for (const auto& v : m.values) sum += std::pow(v.norm(), r);
    return std::pow(h * h * sum, 1.0 / r);
}

ConstraintDeviation constraint_deviation(const NodalField& m) {
    ConstraintDeviation dev;
    const Mesh& mesh = *m.mesh;
    const double h = mesh.h;
    for (const auto& v : m.values) dev.nodal_l1 += std::abs(v.squaredNorm() - 1.0);
    dev.nodal_l1 *= h * h;

    const auto& rule = quadrature_degree4();
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double area = triangle_area(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (const auto& q : rule.points) {
            const Eigen::Vector3d mq = q.barycentric[0] * m[tri[0]] +
                                       q.barycentric[1] * m[tri[1]] +
                                       q.barycentric[2] * m[tri[2]];
            dev.quadrature_l1 += area * q.weight * std::abs(mq.squaredNorm() - 1.0);
        }
    }
    return dev;
}

}  // namespace llg
