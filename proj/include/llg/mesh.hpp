#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace llg {

/// Axis-aligned square domain, described by its lower-left corner and side length.
struct SquareDomain {
    Eigen::Vector2d lower{0.0, 0.0};
    double side = 1.0;

    static SquareDomain unit() { return {{0.0, 0.0}, 1.0}; }
    static SquareDomain centered_unit() { return {{-0.5, -0.5}, 1.0}; }
};

/// Descriptor kept by meshes of the structured family so that point location
/// stays O(1) and nested-mesh transfer is exact.
struct StructuredInfo {
    SquareDomain domain;
    int level = 0;  // n = 2^level squares per side
};

/// Conforming 2D triangulation. Immutable after construction; share via MeshPtr.
struct Mesh {
    std::vector<Eigen::Vector2d> vertices;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise vertex triples
    double h = 0.0;                             // max element diameter
    static constexpr int dimension = 2;
    std::optional<StructuredInfo> structured;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
};

using MeshPtr = std::shared_ptr<const Mesh>;

struct MeshStats {
    double h = 0.0;
    double gamma = 0.0;
    int n_vertices = 0;
    int n_triangles = 0;
    double area = 0.0;
};

/// Uniform grid of 2^level x 2^level squares, each split along the lower-left to
/// upper-right diagonal. 2^(2*level+1) triangles, (2^level+1)^2 vertices,
/// h = 2^-level * side * sqrt(2). Vertices ordered lexicographically by (y, x).
MeshPtr build_structured_mesh(const SquareDomain& domain, int level);

/// Uniform grid of n x n squares, each split by both diagonals into four
/// triangles meeting at the cell center: 4n^2 triangles, (n+1)^2 + n^2 vertices,
/// h = side / n. This is the family behind the fixed-mesh studies with 64, 256
/// and 4096 elements (h = 1/4, 1/8, 1/32). Not nested under red refinement, so
/// it carries no structured descriptor.
MeshPtr build_crisscross_mesh(const SquareDomain& domain, int cells_per_side);

enum class MeshFamily { HalvedSquare, CrissCross };

/// Regular red refinement: every triangle is split into four similar children via
/// edge midpoints. Element count x4, h halved; on structured meshes the result has
/// the same vertex set and ordering as build_structured_mesh at level+1.
MeshPtr refine_uniform(const Mesh& mesh);

MeshStats mesh_stats(const Mesh& mesh);

/// Signed area x2 of the triangle; positive for counterclockwise orientation.
double triangle_area(const Mesh& mesh, int t);

/// Constant P1 basis gradients on triangle t, one row per local vertex.
Eigen::Matrix<double, 3, 2> p1_gradients(const Mesh& mesh, int t);

/// Checks conformity (every interior edge shared by exactly two triangles,
/// boundary edges by one), positive areas and absence of duplicate vertices.
/// Throws std::runtime_error on the first violation.
void validate_mesh(const Mesh& mesh);

/// Plain-text dump: "nv nt", then nv lines "x y", then nt lines "i j k" (0-based).
void write_mesh_text(const Mesh& mesh, std::ostream& out);

}  // namespace llg
