#include "llg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace llg {

namespace {

double longest_edge(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    double e = 0.0;
    for (int k = 0; k < 3; ++k) {
        const Eigen::Vector2d d = mesh.vertices[tri[k]] - mesh.vertices[tri[(k + 1) % 3]];
        e = std::max(e, d.norm());
    }
    return e;
}

double max_diameter(const Mesh& mesh) {
    double h = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) h = std::max(h, longest_edge(mesh, t));
    return h;
}

// Lexicographic (y, x) vertex order; coordinates of the structured family are
// dyadic, so comparisons are exact.
bool lex_less(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    if (a.y() != b.y()) return a.y() < b.y();
    return a.x() < b.x();
}

}  // namespace

MeshPtr build_structured_mesh(const SquareDomain& domain, int level) {
    if (level < 0) throw std::invalid_argument("build_structured_mesh: level must be >= 0");
    if (!(domain.side > 0.0)) throw std::invalid_argument("build_structured_mesh: side must be > 0");

    const int n = 1 << level;
    const double cell = domain.side / n;
    auto mesh = std::make_shared<Mesh>();
    mesh->vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix)
            mesh->vertices.emplace_back(domain.lower.x() + ix * cell, domain.lower.y() + iy * cell);

    mesh->triangles.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const int a = iy * (n + 1) + ix;
            const int b = a + 1;
            const int c = b + (n + 1);
            const int d = a + (n + 1);
            // diagonal a-c (lower-left to upper-right), fixed globally
            mesh->triangles.push_back({a, b, c});
            mesh->triangles.push_back({a, c, d});
        }
    }
    mesh->h = max_diameter(*mesh);
    mesh->structured = StructuredInfo{domain, level};
    return mesh;
}

MeshPtr build_crisscross_mesh(const SquareDomain& domain, int cells_per_side) {
    if (cells_per_side < 1)
        throw std::invalid_argument("build_crisscross_mesh: need at least one cell");
    if (!(domain.side > 0.0)) throw std::invalid_argument("build_crisscross_mesh: side must be > 0");

    const int n = cells_per_side;
    const double cell = domain.side / n;
    auto mesh = std::make_shared<Mesh>();
    mesh->vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1) + static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix)
            mesh->vertices.emplace_back(domain.lower.x() + ix * cell, domain.lower.y() + iy * cell);
    const int centers = (n + 1) * (n + 1);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            mesh->vertices.emplace_back(domain.lower.x() + (ix + 0.5) * cell,
                                        domain.lower.y() + (iy + 0.5) * cell);

    mesh->triangles.reserve(4 * static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const int a = iy * (n + 1) + ix;
            const int b = a + 1;
            const int d = a + (n + 1);
            const int e = d + 1;
            const int o = centers + iy * n + ix;
            mesh->triangles.push_back({a, b, o});
            mesh->triangles.push_back({b, e, o});
            mesh->triangles.push_back({e, d, o});
            mesh->triangles.push_back({d, a, o});
        }

    // relabel lexicographically, matching the convention of the other family
    std::vector<int> order(mesh->vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(mesh->vertices[a], mesh->vertices[b]); });
    std::vector<int> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    std::vector<Eigen::Vector2d> sorted(mesh->vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = mesh->vertices[order[i]];
    mesh->vertices = std::move(sorted);
    for (auto& tri : mesh->triangles)
        for (int& v : tri) v = rank[v];

    mesh->h = max_diameter(*mesh);
    return mesh;
}

MeshPtr refine_uniform(const Mesh& mesh) {
    auto fine = std::make_shared<Mesh>();
    fine->vertices = mesh.vertices;

    std::map<std::pair<int, int>, int> midpoint_index;
    auto midpoint = [&](int i, int j) {
        const auto key = std::minmax(i, j);
        auto it = midpoint_index.find(key);
        if (it != midpoint_index.end()) return it->second;
        const int idx = static_cast<int>(fine->vertices.size());
        fine->vertices.push_back(0.5 * (mesh.vertices[i] + mesh.vertices[j]));
        midpoint_index.emplace(key, idx);
        return idx;
    };

    fine->triangles.reserve(4 * mesh.triangles.size());
    for (const auto& tri : mesh.triangles) {
        const int m01 = midpoint(tri[0], tri[1]);
        const int m12 = midpoint(tri[1], tri[2]);
        const int m20 = midpoint(tri[2], tri[0]);
        fine->triangles.push_back({tri[0], m01, m20});
        fine->triangles.push_back({tri[1], m12, m01});
        fine->triangles.push_back({tri[2], m20, m12});
        fine->triangles.push_back({m01, m12, m20});
    }

    // Relabel lexicographically by (y, x) so refined and directly built meshes
    // share vertex order, sparsity patterns and CSV output.
    std::vector<int> order(fine->vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(fine->vertices[a], fine->vertices[b]); });
    std::vector<int> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

    std::vector<Eigen::Vector2d> sorted(fine->vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = fine->vertices[order[i]];
    fine->vertices = std::move(sorted);
    for (auto& tri : fine->triangles)
        for (int& v : tri) v = rank[v];

    fine->h = max_diameter(*fine);
    if (mesh.structured)
        fine->structured = StructuredInfo{mesh.structured->domain, mesh.structured->level + 1};
    return fine;
}

double triangle_area(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Vector2d e1 = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Eigen::Vector2d e2 = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

Eigen::Matrix<double, 3, 2> p1_gradients(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Vector2d e1 = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Eigen::Vector2d e2 = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    const double det = e1.x() * e2.y() - e1.y() * e2.x();
    Eigen::Matrix<double, 3, 2> g;
    g.row(1) = Eigen::Vector2d(e2.y(), -e2.x()).transpose() / det;
    g.row(2) = Eigen::Vector2d(-e1.y(), e1.x()).transpose() / det;
    g.row(0) = -g.row(1) - g.row(2);
    return g;
}

MeshStats mesh_stats(const Mesh& mesh) {
    MeshStats s;
    s.n_vertices = mesh.n_vertices();
    s.n_triangles = mesh.n_triangles();
    s.h = mesh.h;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const double a = triangle_area(mesh, t);
        s.area += a;
        s.gamma = std::max(s.gamma, std::max(mesh.h / std::sqrt(a), 1.0));
    }
    return s;
}

void validate_mesh(const Mesh& mesh) {
    for (int t = 0; t < mesh.n_triangles(); ++t)
        if (!(triangle_area(mesh, t) > 0.0))
            throw std::runtime_error("mesh: nonpositive area in triangle " + std::to_string(t));

    {
        std::vector<Eigen::Vector2d> v = mesh.vertices;
        std::sort(v.begin(), v.end(), lex_less);
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i - 1] == v[i]) throw std::runtime_error("mesh: duplicate vertices");
    }

    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : mesh.triangles)
        for (int k = 0; k < 3; ++k)
            ++edge_count[std::minmax(tri[k], tri[(k + 1) % 3])];
    for (const auto& [edge, count] : edge_count)
        if (count > 2)
            throw std::runtime_error("mesh: edge shared by more than two triangles");
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
    out << mesh.n_vertices() << ' ' << mesh.n_triangles() << '\n';
    out.precision(17);
    for (const auto& v : mesh.vertices) out << v.x() << ' ' << v.y() << '\n';
    for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace llg
