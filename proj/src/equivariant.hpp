#ifndef MMK_EQUIVARIANT_HPP
#define MMK_EQUIVARIANT_HPP

#include <array>
#include <optional>

#include "profile.hpp"

namespace mmk {

// Closed-form singular values of the a-Hopf construction f_kl at parameter
// s, given a = a(s) and a_s = a'(s); also the eigendirections expressed in
// the orthonormal chart frame (v1, v2, v3).
struct EquivariantSingularValues {
    double lambda1 = 0.0;
    double lambda2 = 0.0; // sqrt(k^2 sin^2 a / sin^2 s + l^2 sin^2 a / cos^2 s)
    double lambda3 = 0.0; // |a_s|
    std::array<double, 3> alpha1; // kernel direction
    std::array<double, 3> alpha2;
    std::array<double, 3> alpha3;
};

EquivariantSingularValues equivariant_singular_values(int k, int l, double a, double a_s,
                                                      double s);

// Weakly conformal generating function: branch l == k is 2 atan(c tan^k s);
// branch l > k is the two-term quotient form. 0 < k <= l, c > 0.
double conformal_profile_value(int k, int l, double c, double s);

// Profile object for the conformal closed form. The derivatives are
// obtained by Richardson-extrapolated differencing of the closed form so
// that the conformality equation can be tested rather than assumed.
GeneratingProfile conformal_profile(int k, int l, double c);

// Residual of the generating-function equation
//   a_ss/(1+a_s^2) + [cos s sin s (cos 2s + (l^2-k^2) sin^2 a) a_s
//                     - sin a cos a (k^2 cos^2 s + l^2 sin^2 s)] / D = 0,
//   D = sin^2 s cos^2 s + sin^2 a (l^2 sin^2 s + k^2 cos^2 s).
double minimality_residual(int k, int l, double a, double a_s, double a_ss, double s);

// Residual of the conformality equation a_s = sin a sqrt(k^2/sin^2 s + l^2/cos^2 s).
double conformality_residual(int k, int l, double a, double a_s, double s);

// Closed-form h components of the equivariant graph (a_s > 0 required).
struct EquivariantH {
    double h[2][3][3] = {}; // index 0 -> h^4, 1 -> h^5
};

EquivariantH equivariant_h_components(int k, int l, const GeneratingProfile& profile, double s);

// Leading endpoint coefficients of the equation numerator: a nonzero value
// certifies that no C^2 solution with slope aS0 exists at that endpoint.
struct EndpointCoefficients {
    double left;  // ~ aS0 (1 - k^2)
    double right; // ~ slope (1 - l^2) at pi/2
};

EndpointCoefficients endpoint_analysis(int k, int l, double aS0);

struct ShootingConfig {
    double start_offset = 1e-6;    // epsilon of the series seed
    double rel_tol = 1e-10;        // integrator relative tolerance
    double abs_tol = 1e-12;        // integrator absolute tolerance
    double match_point = M_PI / 4; // interior matching abscissa of solve_bvp
    double secant_tol = 1e-10;     // boundary mismatch tolerance
};

// Cubic coefficient of the series a(s) = c1 s + c3 s^3 + ... solving the
// equation near the regular singular endpoint (requires k^2 = 1); obtained
// by collocation, independent of any closed form.
double frobenius_cubic_coefficient(int k, int l, double c1);

struct ShootResult {
    GeneratingProfile profile;
    double mismatch = 0.0;
    double aS0 = 0.0;
};

// Integrate the generating-function equation from the left series seed and
// measure the boundary mismatch against the mirrored series at pi/2.
ShootResult shoot(int k, int l, double aS0, const ShootingConfig& cfg = {});

struct BvpNonexistence {
    double coefficient; // the failing endpoint coefficient
    bool at_left;
};

struct BvpResult {
    std::optional<GeneratingProfile> profile;
    double aS0 = 0.0;
    double mismatch = 0.0;
    std::optional<BvpNonexistence> nonexistence;
};

// Two-sided shooting with secant iteration on the initial slope; matching
// of value and slope at cfg.match_point. Returns Nonexistence when the
// endpoint analysis rules out a C^2 solution.
BvpResult solve_bvp(int k, int l, const ShootingConfig& cfg = {});

} // namespace mmk

#endif
