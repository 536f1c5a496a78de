#ifndef MMK_CURVATURE_HPP
#define MMK_CURVATURE_HPP

#include <array>

#include "charts.hpp"
#include "graphcore.hpp"
#include "profile.hpp"

namespace mmk {

// Components of the graph metric of an equivariant map in the (xi, eta, s)
// chart; they depend on s only. pure_sphere drops the pullback part (used
// for convention self-tests against the round metric).
struct EquivariantChartMetric {
    int k = 1, l = 1;
    const GeneratingProfile* profile = nullptr;
    bool pure_sphere = false;

    std::array<std::array<double, 3>, 3> g(double s) const;
    std::array<std::array<double, 3>, 3> dg(double s) const;
};

using Christoffel = std::array<std::array<std::array<double, 3>, 3>, 3>; // [k][i][j]

Christoffel christoffel(const EquivariantChartMetric& m, double s);

// Curvature 4-tensor of the chart metric in the normalization of the Gauss
// equation: for a round sphere it evaluates to
// (<X,Z><Y,W> - <X,W><Y,Z>)/r^2. Coordinate derivatives of the Christoffel
// symbols are taken by central differences in s.
struct ChartCurvature {
    double R[3][3][3][3];
    std::array<std::array<double, 3>, 3> metric;
};

ChartCurvature chart_curvature(const EquivariantChartMetric& m, double s);

// Round-sphere curvature 4-tensor in the same normalization.
double sphere_curvature(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W, double radius);

// Gauss-equation residuals |(R - F*Rt)(e_i,e_j,e_i,e_j) - A-quadratic side|
// for the pairs (1,2), (1,3), (2,3) of the graph frame at a chart point.
std::array<double, 3> gauss_residuals(int k, int l, const GeneratingProfile& profile,
                                      const HopfChart3& c);

// Codazzi-equation residual for the coordinate-field triple
// (d_a, d_b, d_c): |(nabla^perp A) alternation - (Rt(dF.,dF.)dF.)^perp|.
double codazzi_residual(int k, int l, const GeneratingProfile& profile, const HopfChart3& c,
                        int a, int b, int cc);

} // namespace mmk

#endif
