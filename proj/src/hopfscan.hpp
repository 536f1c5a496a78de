#ifndef MMK_HOPFSCAN_HPP
#define MMK_HOPFSCAN_HPP

#include <cstdint>

#include "graphcore.hpp"
#include "map.hpp"

namespace mmk {

// Vertical fields zeta_i = -(left multiplication by i_i)(p) on the sphere
// of the division algebra pair space, i = 1..d-1 for algebra dimension d.
std::vector<Vec> vertical_fields(int algebra_dim, const SpherePoint& p);

// phi_i(v) = J_i v - <v, zeta_i> p (tangential part of the complex structure).
Vec phi_field(int algebra_dim, int i, const SpherePoint& p, const Vec& v);

// Random unit horizontal vector: tangent, orthogonal to all vertical fields.
Vec horizontal_unit(int algebra_dim, const SpherePoint& p, class Sampler& rng);

// Differential of the Moebius action on the unit 2-sphere along tangent w.
Vec moebius_push(const MoebiusMap& m, const SpherePoint& q, const Vec& w);

// Conformality check of the Moebius factor: max |sigma_i - lambda| over the
// two singular values of the measured differential at q.
double moebius_factor_differential_gap(const MoebiusMap& m, const SpherePoint& q);

struct ScanResult {
    double mean_normA2 = 0.0;
    double max_dev_normA2 = 0.0; // max |normA2 - mean|
    double max_H = 0.0;
    int samples = 0;
};

// Sample random source points and report |A|^2 and |H| statistics.
ScanResult invariant_scan(const MapUnderTest& f, int samples, std::uint64_t seed);

struct ComposedCheckResult {
    double max_residual = 0.0;  // |measured |A_G|^2 - closed formula|
    double max_H = 0.0;
    int samples = 0;
};

// Compare the measured |A_G|^2 of the Hopf map composed with a Moebius map
// (target radius 1/2) against
//   4 (lambda^2 (1+lambda^2) + |grad lambda|^2) / (1+lambda^2)^3,
// where lambda is the conformal factor and the gradient is taken on the
// radius-1/2 target.
ComposedCheckResult composed_invariant_check(const MoebiusMap& m, int samples,
                                             std::uint64_t seed);

} // namespace mmk

#endif
