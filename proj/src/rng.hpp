#ifndef MMK_RNG_HPP
#define MMK_RNG_HPP

#include <cstdint>
#include <random>

#include "geometry.hpp"

namespace mmk {

// Seeded sampler. Gaussian draws use an explicit Box-Muller on the raw
// 64-bit stream so the sequence depends only on the seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        // 53-bit mantissa in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double gauss() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec gauss_vec(int n) {
        Vec v(n);
        for (double& x : v) x = gauss();
        return v;
    }

    SpherePoint sphere_point(int ambient_dim, double radius = 1.0) {
        Vec v = gauss_vec(ambient_dim);
        while (norm(v) < 1e-6) v = gauss_vec(ambient_dim);
        return SpherePoint::project(std::move(v), radius);
    }

    TangentVector unit_tangent(const SpherePoint& p) {
        Vec v = tangential_part(gauss_vec(p.ambient_dim()), p.coords);
        while (norm(v) < 1e-6) v = tangential_part(gauss_vec(p.ambient_dim()), p.coords);
        return TangentVector{p, normalized(v)};
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace mmk

#endif
