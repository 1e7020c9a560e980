#pragma once

#include "llg/assembly.hpp"
#include "llg/field.hpp"
#include "llg/linear_solver.hpp"

namespace llg {

/// Per-node orthonormal pair spanning the plane orthogonal to the anchor field.
/// Only the spanned subspace matters; the frame itself is made deterministic by
/// the axis-selection rule in build_tangent_frame.
struct TangentFrame {
    NodalField anchor;
    std::vector<Eigen::Vector3d> t1, t2;

    int size() const { return static_cast<int>(t1.size()); }
};

inline constexpr double kAnchorEpsilon = 1e-12;

/// t1(z) = normalize(a(z) x e_k) with e_k the coordinate axis minimizing |a(z).e_k|
/// (ties broken by smallest k); t2(z) = normalize(a(z) x t1(z)). Throws
/// DegenerateAnchorError if |a(z)| < kAnchorEpsilon at some node.
TangentFrame build_tangent_frame(const NodalField& anchor);

/// 3M x 2M prolongation whose columns are the frame vectors per node.
SparseMat frame_prolongation(const TangentFrame& frame);

/// Galerkin restriction of A_full to the tangent space: solves
/// (E' A_full E) w = E' rhs_full and returns v = E w; v(z) is orthogonal to the
/// anchor at every node up to roundoff.
NodalField solve_in_tangent_space(const TangentFrame& frame, const SparseMat& A_full,
                                  const Eigen::VectorXd& rhs_full, const LinearSolveConfig& cfg);

}  // namespace llg
