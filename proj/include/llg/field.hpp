#pragma once

#include "llg/mesh.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <vector>

namespace llg {

/// Point function of space and time with values in R^3.
using SpaceTimeFn = std::function<Eigen::Vector3d(const Eigen::Vector2d&, double)>;

/// R^3-valued P1 finite element function, represented by its vertex values.
struct NodalField {
    MeshPtr mesh;
    std::vector<Eigen::Vector3d> values;

    NodalField() = default;
    explicit NodalField(MeshPtr m) : mesh(std::move(m)), values(mesh->n_vertices(), Eigen::Vector3d::Zero()) {}

    int size() const { return static_cast<int>(values.size()); }
    Eigen::Vector3d& operator[](int z) { return values[z]; }
    const Eigen::Vector3d& operator[](int z) const { return values[z]; }

    /// Node-major flattening: dof(z, c) = 3z + c.
    Eigen::VectorXd flatten() const;
    static NodalField from_flat(MeshPtr mesh, const Eigen::VectorXd& x);

    /// max_z of the Euclidean nodal modulus.
    double max_nodal_norm() const;
    /// max_z |a(z) - b(z)| (Euclidean per node).
    static double max_nodal_distance(const NodalField& a, const NodalField& b);
};

/// Nodal interpoland of fn at time t. Throws NumericalError if fn returns a
/// non-finite value at any vertex.
NodalField interpolate_nodal(const SpaceTimeFn& fn, MeshPtr mesh, double t);

/// linear combination a*x + b*y (same mesh).
NodalField axpby(double a, const NodalField& x, double b, const NodalField& y);

/// Evaluates a P1 field at an arbitrary point of a structured mesh (O(1) lookup).
Eigen::Vector3d eval_p1(const NodalField& field, const Eigen::Vector2d& p);

/// P1 prolongation onto a finer mesh of the same structured family: evaluates
/// the field at the fine vertices (exact for nested meshes).
NodalField prolong_to(const NodalField& field, MeshPtr fine_mesh);

/// CSV dump with columns node_index,x,y,mx,my,mz (17 significant digits).
void write_field_csv(const NodalField& field, std::ostream& out);

}  // namespace llg
