#pragma once

#include "llg/field.hpp"
#include "llg/mesh.hpp"
#include "llg/quadrature.hpp"

#include <Eigen/Sparse>

namespace llg {

using SparseMat = Eigen::SparseMatrix<double>;

/// Scalar P1 mass matrix (symmetric positive definite). Element contribution is
/// |K|/12 * [[2,1,1],[1,2,1],[1,1,2]]; vector fields apply it blockwise.
SparseMat assemble_mass(const Mesh& mesh);

/// Scalar P1 stiffness matrix (symmetric positive semidefinite, kernel = constants).
SparseMat assemble_stiffness(const Mesh& mesh);

/// 3M x 3M operator B with phi' B v = \int (w x v) . phi dx, w piecewise affine,
/// integrated with the degree-3 rule (the integrand is cubic per element).
/// Skew-symmetric by construction. Node-major dof layout: dof(z,c) = 3z + c.
SparseMat assemble_cross_form(const Mesh& mesh, const NodalField& w);

/// kron(A, I3) in the node-major layout, for blockwise application of scalar forms.
SparseMat expand_vector3(const SparseMat& scalar);

/// Per-mesh assembled forms, built once and shared read-only.
struct FemContext {
    MeshPtr mesh;
    SparseMat mass;        // M x M
    SparseMat stiffness;   // M x M
    SparseMat mass3;       // 3M x 3M
    SparseMat stiffness3;  // 3M x 3M
};

FemContext make_fem_context(MeshPtr mesh);

/// L2 inner product of two fields, exact for P1 (blockwise mass).
double inner_l2(const FemContext& fem, const NodalField& a, const NodalField& b);
/// H1 seminorm inner product <grad a, grad b>.
double inner_h1(const FemContext& fem, const NodalField& a, const NodalField& b);

struct FieldNorms {
    double l2 = 0.0;
    double h1_semi = 0.0;
    double linf_nodal = 0.0;
    double w1inf_semi = 0.0;  // max over elements of the Frobenius norm of the gradient
};

FieldNorms field_norms(const FemContext& fem, const NodalField& m);

/// (h^d sum_z |m(z)|^r)^(1/r) with d = 2.
double discrete_lr_norm(const NodalField& m, double r);

struct ConstraintDeviation {
    double nodal_l1 = 0.0;       // h^2 sum_z | |m(z)|^2 - 1 |
    double quadrature_l1 = 0.0;  // elementwise degree-4 quadrature of | |m_h|^2 - 1 |
};

ConstraintDeviation constraint_deviation(const NodalField& m);

}  // namespace llg
