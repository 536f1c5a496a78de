#ifndef MMK_GEOMETRY_HPP
#define MMK_GEOMETRY_HPP

#include <cmath>
#include <utility>

#include "error.hpp"
#include "linalg.hpp"

namespace mmk {

// Point of a round sphere S^m(r), stored as the ambient coordinate vector.
struct SpherePoint {
    Vec coords;
    double radius = 1.0;

    int ambient_dim() const { return static_cast<int>(coords.size()); }

    static SpherePoint on_sphere(Vec coords, double radius) {
        const double n = norm(coords);
        if (radius <= 0.0 || std::fabs(n - radius) > 1e-12 * radius)
            fail(ErrorCode::InvalidArgument, "point is not on the sphere of the declared radius");
        return SpherePoint{std::move(coords), radius};
    }

    // Rescale the coordinates exactly onto the sphere (used after arithmetic
    // that is on-sphere only up to roundoff).
    static SpherePoint project(Vec coords, double radius) {
        const double n = norm(coords);
        if (n == 0.0) fail(ErrorCode::InvalidArgument, "cannot project the origin to a sphere");
        return SpherePoint{scaled(coords, radius / n), radius};
    }
};

// Tangent vector at a base point, stored in ambient coordinates.
struct TangentVector {
    SpherePoint base;
    Vec vec;

    static TangentVector at(SpherePoint base, Vec vec) {
        const double r = norm(vec);
        if (r > 0.0 && std::fabs(dot(vec, base.coords)) > 1e-10 * r * base.radius)
            fail(ErrorCode::InvalidArgument, "vector is not tangent to the sphere");
        return TangentVector{std::move(base), std::move(vec)};
    }

    // Project out the radial component and build a valid tangent vector.
    static TangentVector project(const SpherePoint& base, const Vec& vec) {
        return TangentVector{base, tangential_part(vec, base.coords)};
    }
};

// Vector in the tangent space of a product of two spheres, split by factor.
struct ProductVector {
    Vec m_part;
    Vec n_part;

    double inner(const ProductVector& o) const { return dot(m_part, o.m_part) + dot(n_part, o.n_part); }
    double norm2() const { return dot(m_part, m_part) + dot(n_part, n_part); }
    double norm() const { return std::sqrt(norm2()); }

    ProductVector& add_scaled(double c, const ProductVector& o) {
        axpy(m_part, c, o.m_part);
        axpy(n_part, c, o.n_part);
        return *this;
    }
};

// Orthonormal tangent basis at p obtained by Gram-Schmidt of the ambient
// axes against the radial direction. Deterministic for a given point.
inline std::vector<Vec> tangent_basis(const SpherePoint& p) {
    const int N = p.ambient_dim();
    std::vector<Vec> basis;
    basis.reserve(N - 1);
    Vec radial = normalized(p.coords);
    for (int axis = 0; axis < N && static_cast<int>(basis.size()) < N - 1; ++axis) {
        Vec v(N, 0.0);
        v[axis] = 1.0;
        axpy(v, -dot(v, radial), radial);
        for (const Vec& b : basis) axpy(v, -dot(v, b), b);
        const double n = norm(v);
        if (n > 1e-8) basis.push_back(scaled(v, 1.0 / n));
    }
    return basis;
}

} // namespace mmk

#endif
