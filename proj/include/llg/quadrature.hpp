#pragma once

#include <Eigen/Dense>

#include <vector>

namespace llg {

/// Quadrature rule on the reference triangle in barycentric coordinates.
/// Weights are normalized to sum to one (multiply by |K| for a physical element).
struct QuadratureRule {
    struct Point {
        Eigen::Vector3d barycentric;
        double weight;
    };
    std::vector<Point> points;
    int exactness_degree = 0;
};

/// Three-point edge-midpoint rule, exact for quadratics.
inline const QuadratureRule& quadrature_degree2() {
    static const QuadratureRule rule{
        {{{0.5, 0.5, 0.0}, 1.0 / 3.0},
         {{0.0, 0.5, 0.5}, 1.0 / 3.0},
         {{0.5, 0.0, 0.5}, 1.0 / 3.0}},
        2};
    return rule;
}

/// Four-point symmetric rule, exact for cubics.
inline const QuadratureRule& quadrature_degree3() {
    static const QuadratureRule rule{
        {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, -27.0 / 48.0},
         {{0.6, 0.2, 0.2}, 25.0 / 48.0},
         {{0.2, 0.6, 0.2}, 25.0 / 48.0},
         {{0.2, 0.2, 0.6}, 25.0 / 48.0}},
        3};
    return rule;
}

/// Six-point Dunavant rule, exact for quartics.
inline const QuadratureRule& quadrature_degree4() {
    constexpr double a = 0.445948490915965;
    constexpr double wa = 0.223381589678011;
    constexpr double b = 0.091576213509771;
    constexpr double wb = 0.109951743655322;
    static const QuadratureRule rule{
        {{{1.0 - 2 * a, a, a}, wa},
         {{a, 1.0 - 2 * a, a}, wa},
         {{a, a, 1.0 - 2 * a}, wa},
         {{1.0 - 2 * b, b, b}, wb},
         {{b, 1.0 - 2 * b, b}, wb},
         {{b, b, 1.0 - 2 * b}, wb}},
        4};
    return rule;
}

}  // namespace llg
