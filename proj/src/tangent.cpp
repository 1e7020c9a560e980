#include "llg/tangent.hpp"

#include <cmath>
#include <string>

namespace llg {

TangentFrame build_tangent_frame(const NodalField& anchor) {
    TangentFrame frame;
    frame.anchor = anchor;
    frame.t1.resize(anchor.size());
    frame.t2.resize(anchor.size());
    for (int z = 0; z < anchor.size(); ++z) {
        const Eigen::Vector3d& a = anchor[z];
        if (!(a.norm() >= kAnchorEpsilon))
            throw DegenerateAnchorError(
                "build_tangent_frame: degenerate anchor at node " + std::to_string(z), z);
        int k = 0;
        for (int c = 1; c < 3; ++c)
            if (std::abs(a[c]) < std::abs(a[k])) k = c;
        const Eigen::Vector3d t1 = a.cross(Eigen::Vector3d::Unit(k)).normalized();
        frame.t1[z] = t1;
        frame.t2[z] = a.cross(t1).normalized();
    }
    return frame;
}

SparseMat frame_prolongation(const TangentFrame& frame) {
    const int m = frame.size();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(6 * static_cast<std::size_t>(m));
    for (int z = 0; z < m; ++z)
        for (int c = 0; c < 3; ++c) {
            triplets.emplace_back(3 * z + c, 2 * z, frame.t1[z][c]);
            triplets.emplace_back(3 * z + c, 2 * z + 1, frame.t2[z][c]);
        }
    SparseMat e(3 * m, 2 * m);
    e.setFromTriplets(triplets.begin(), triplets.end());
    e.makeCompressed();
    return e;
}

NodalField solve_in_tangent_space(const TangentFrame& frame, const SparseMat& A_full,
                                  const Eigen::VectorXd& rhs_full, const LinearSolveConfig& cfg) {
    const SparseMat e = frame_prolongation(frame);
    if (A_full.rows() != e.rows() || rhs_full.size() != e.rows())
        throw ConfigError("solve_in_tangent_space: dimension mismatch");
    const SparseMat reduced = (e.transpose() * A_full * e).pruned();
    const Eigen::VectorXd rhs = e.transpose() * rhs_full;
    const Eigen::VectorXd w = solve_linear(reduced, rhs, cfg);
    return NodalField::from_flat(frame.anchor.mesh, e * w);
}

}  // namespace llg
