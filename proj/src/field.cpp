#include "llg/field.hpp"

#include "llg/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace llg {

Eigen::VectorXd NodalField::flatten() const {
    Eigen::VectorXd x(3 * size());
    for (int z = 0; z < size(); ++z) x.segment<3>(3 * z) = values[z];
    return x;
}

NodalField NodalField::from_flat(MeshPtr mesh, const Eigen::VectorXd& x) {
    NodalField f(std::move(mesh));
    for (int z = 0; z < f.size(); ++z) f.values[z] = x.segment<3>(3 * z);
    return f;
}

double NodalField::max_nodal_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, v.norm());
    return m;
}

double NodalField::max_nodal_distance(const NodalField& a, const NodalField& b) {
    double m = 0.0;
    for (int z = 0; z < a.size(); ++z) m = std::max(m, (a.values[z] - b.values[z]).norm());
    return m;
}

NodalField interpolate_nodal(const SpaceTimeFn& fn, MeshPtr mesh, double t) {
    NodalField f(std::move(mesh));
    for (int z = 0; z < f.size(); ++z) {
        const Eigen::Vector3d v = fn(f.mesh->vertices[z], t);
        if (!v.allFinite())
            throw NumericalError("interpolate_nodal: non-finite value at node " + std::to_string(z));
        f.values[z] = v;
    }
    return f;
}

NodalField axpby(double a, const NodalField& x, double b, const NodalField& y) {
    NodalField r(x.mesh);
    for (int z = 0; z < r.size(); ++z) r.values[z] = a * x.values[z] + b * y.values[z];
    return r;
}

Eigen::Vector3d eval_p1(const NodalField& field, const Eigen::Vector2d& p) {
    const Mesh& mesh = *field.mesh;
    if (!mesh.structured)
        throw NumericalError("eval_p1: point evaluation requires a structured mesh");
    const auto& info = *mesh.structured;
    const int n = 1 << info.level;
    const double cell = info.domain.side / n;

    auto clamp = [n](int i) { return std::max(0, std::min(n - 1, i)); };
    const double gx = (p.x() - info.domain.lower.x()) / cell;
    const double gy = (p.y() - info.domain.lower.y()) / cell;
    const int ix = clamp(static_cast<int>(std::floor(gx)));
    const int iy = clamp(static_cast<int>(std::floor(gy)));
    const double lx = gx - ix;
    const double ly = gy - iy;

    const int a = iy * (n + 1) + ix;       // (0,0)
    const int b = a + 1;                   // (1,0)
    const int c = b + (n + 1);             // (1,1)
    const int d = a + (n + 1);             // (0,1)
    if (ly <= lx)  // triangle (a,b,c)
        return (1.0 - lx) * field[a] + (lx - ly) * field[b] + ly * field[c];
    return (1.0 - ly) * field[a] + lx * field[c] + (ly - lx) * field[d];
}

NodalField prolong_to(const NodalField& field, MeshPtr fine_mesh) {
    NodalField f(std::move(fine_mesh));
    for (int z = 0; z < f.size(); ++z) f.values[z] = eval_p1(field, f.mesh->vertices[z]);
    return f;
}

void write_field_csv(const NodalField& field, std::ostream& out) {
    out << "node_index,x,y,mx,my,mz\n";
    char buf[512];
    for (int z = 0; z < field.size(); ++z) {
        const auto& p = field.mesh->vertices[z];
        const auto& v = field.values[z];
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", z, p.x(), p.y(),
                      v.x(), v.y(), v.z());
        out << buf;
    }
}

}  // namespace llg
