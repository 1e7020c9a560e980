#pragma once

#include "llg/field.hpp"
#include "llg/integrators.hpp"
#include "llg/mesh.hpp"

#include <optional>
#include <string>

namespace llg {

/// Reusable benchmark definition: domain, initial state, applied field and the
/// physical parameters the experiments default to.
struct BenchmarkProblem {
    std::string name;
    SquareDomain domain;
    SpaceTimeFn m0;             // evaluated at t = 0
    SpaceTimeFn applied_field;  // f(x, t)
    bool field_constant_in_time = false;
    double alpha = 0.25;
    double lambda_ex_sq = 1.0;
    double final_time = 1.0;
    std::optional<SpaceTimeFn> exact_solution;

    /// Halved-square family at the given level; the criss-cross family uses
    /// 2^level cells per side (level 2 -> 64 triangles, 3 -> 256, 5 -> 4096).
    MeshPtr build_mesh(int level, MeshFamily family = MeshFamily::HalvedSquare) const {
        return family == MeshFamily::HalvedSquare ? build_structured_mesh(domain, level)
                                                  : build_crisscross_mesh(domain, 1 << level);
    }
    Problem make(MeshPtr mesh) const {
        return make_problem(std::move(mesh), m0, applied_field, field_constant_in_time);
    }
};

/// Constant initial state (0,1,0) on the unit square driven by the radial unit
/// field (x,y,0)/|(x,y,0)| (zero at the origin corner where it is undefined).
BenchmarkProblem radial_field_problem(double lambda_ex_sq = 0.01);

/// Prescribed-solution benchmark on the unit square: m depends on x1 and t only,
/// with the applied field derived in closed form so that m solves the dynamics.
BenchmarkProblem manufactured_problem();

/// Zero-field benchmark on the centered unit square whose initial state drives a
/// gradient concentration at the domain center in finite time.
BenchmarkProblem blowup_problem();

/// Lookup by CLI name: radial | manufactured | blowup.
BenchmarkProblem benchmark_by_name(const std::string& name, double lambda_ex_sq = 0.01);

}  // namespace llg
