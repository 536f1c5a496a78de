#ifndef MMK_CHARTS_HPP
#define MMK_CHARTS_HPP

#include <array>

#include "geometry.hpp"
#include "map.hpp"

namespace mmk {

// Torus-polar chart of S^3: (xi, eta, s) -> (sin s e^{i xi}, cos s e^{i eta}).
struct HopfChart3 {
    double xi = 0.0;  // in (0, 2pi)
    double eta = 0.0; // in (0, 2pi)
    double s = 0.0;   // in (0, pi/2)
};

// Polar chart of S^2(r): (sigma, a) -> r (sin a e^{i sigma}, cos a).
struct PolarChart2 {
    double sigma = 0.0; // in (0, 2pi)
    double a = 0.0;     // in (0, pi)
    double radius = 1.0;
};

constexpr double kChartGuard = 1e-2; // guard band on s and on the polar angle

SpherePoint chart_to_ambient(const HopfChart3& c);
HopfChart3 ambient_to_chart3(const SpherePoint& p);

SpherePoint chart_to_ambient(const PolarChart2& c);
PolarChart2 ambient_to_chart2(const SpherePoint& p);

// Orthonormal chart frame v1 = d_xi/sin s, v2 = d_eta/cos s, v3 = d_s at c.
// Throws ChartDegenerate outside the guard band.
std::array<TangentVector, 3> s3_frame(const HopfChart3& c, double guard = kChartGuard);

// Connection coefficients of the chart frame: entry [i][j][k] is the
// k-component of the covariant derivative of v_j along v_i (S^3 metric).
struct FrameConnectionTable {
    double coefficients[3][3][3] = {};
};

FrameConnectionTable s3_connection(const HopfChart3& c, double guard = kChartGuard);

// Differentiation backend of the map engine.
enum class JetBackend {
    Taylor,           // exact second-order jets through the evaluation
    FiniteDifference, // Richardson-extrapolated central differences
};

struct JetOptions {
    JetBackend backend = JetBackend::Taylor;
    double fd_step = 1e-4;
    double breakdown_tol = 1e-6; // disagreement bound for the FD backend
};

// First and second t-derivatives of t -> f(cos t p + sin t v) at t = 0,
// for |v| = 1 and unit source sphere, in ambient target coordinates.
// Because the curve is a unit-speed source geodesic and the target is a
// round sphere, the tangential part of `second` at f(p) is B(v, v).
struct GreatCircleJet {
    Vec first;
    Vec second;
};

GreatCircleJet great_circle_jet(const MapUnderTest& f, const SpherePoint& p, const Vec& v,
                                const JetOptions& opt = {});

inline GreatCircleJet great_circle_jet(const MapUnderTest& f, const SpherePoint& p,
                                       const TangentVector& v, const JetOptions& opt = {}) {
    return great_circle_jet(f, p, v.vec, opt);
}

// df_p(v) for tangent v of any length (first derivative only).
Vec push_forward(const MapUnderTest& f, const SpherePoint& p, const Vec& v,
                 const JetOptions& opt = {});

} // namespace mmk

#endif
