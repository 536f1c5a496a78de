#include "map.hpp"

#include <cmath>

#include "algebra.hpp"
#include "error.hpp"

namespace mmk {

namespace {

// (wr + i wi) = (xr + i xi)^k for a unit complex argument, integer k
template <class T>
void cpow_unit(T xr, T xi, int k, T& wr, T& wi) {
    if (k < 0) {
        xi = -xi;
        k = -k;
    }
    wr = T(1.0);
    wi = T(0.0);
    while (k > 0) {
        if (k & 1) {
            const T nr = wr * xr - wi * xi;
            const T ni = wr * xi + wi * xr;
            wr = nr;
            wi = ni;
        }
        const T sr = xr * xr - xi * xi;
        const T si = 2.0 * xr * xi;
        xr = sr;
        xi = si;
        k >>= 1;
    }
}

// Conjugate-product Hopf formula over the division algebra of dimension d:
// (x, y) -> (conj(x) y, (|x|^2 - |y|^2)/2), which lands on the radius-1/2
// sphere; scaled afterwards to the requested target radius. The conjugate
// sits on the left factor so the fibers are the orbits of unit left
// multiplication.
template <class T>
void hopf_eval(int d, double target_radius, const T* in, T* out) {
    const T* x = in;
    const T* y = in + d;
    T xc[8], u[8];
    alg_conj(d, x, xc);
    alg_mul(d, xc, y, u);
    T nx = T(0.0), ny = T(0.0);
    for (int i = 0; i < d; ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    const double scale = 2.0 * target_radius;
    for (int i = 0; i < d; ++i) out[i] = scale * u[i];
    out[d] = scale * 0.5 * (nx - ny);
}

} // namespace

MapUnderTest MapUnderTest::equivariant(int k, int l, GeneratingProfile profile) {
    if (k == 0 || l == 0)
        fail(ErrorCode::InvalidArgument, "equivariant map requires k*l != 0");
    MapUnderTest m;
    m.kind_ = MapKind::Equivariant;
    m.k_ = k;
    m.l_ = l;
    m.src_dim_ = 4;
    m.tgt_dim_ = 3;
    m.radius_ = 1.0;
    m.profile_ = std::move(profile);
    return m;
}

MapUnderTest MapUnderTest::hopf_complex(double target_radius) {
    MapUnderTest m;
    m.kind_ = MapKind::HopfComplex;
    m.src_dim_ = 4;
    m.tgt_dim_ = 3;
    m.radius_ = target_radius;
    return m;
}

MapUnderTest MapUnderTest::hopf_quaternionic() {
    MapUnderTest m;
    m.kind_ = MapKind::HopfQuaternionic;
    m.src_dim_ = 8;
    m.tgt_dim_ = 5;
    m.radius_ = 0.5;
    return m;
}

MapUnderTest MapUnderTest::hopf_octonionic() {
    MapUnderTest m;
    m.kind_ = MapKind::HopfOctonionic;
    m.src_dim_ = 16;
    m.tgt_dim_ = 9;
    m.radius_ = 0.5;
    return m;
}

MapUnderTest MapUnderTest::hopf_moebius(const MoebiusMap& mob, double target_radius) {
    mob.validate();
    MapUnderTest m;
    m.kind_ = MapKind::HopfMoebius;
    m.src_dim_ = 4;
    m.tgt_dim_ = 3;
    m.radius_ = target_radius;
    m.moebius_ = mob;
    return m;
}

MapUnderTest MapUnderTest::constant(SpherePoint target_point, int source_ambient_dim) {
    MapUnderTest m;
    m.kind_ = MapKind::Constant;
    m.src_dim_ = source_ambient_dim;
    m.tgt_dim_ = target_point.ambient_dim();
    m.radius_ = target_point.radius;
    m.constant_point_ = target_point.coords;
    return m;
}

MapUnderTest MapUnderTest::identity_s3() {
    MapUnderTest m;
    m.kind_ = MapKind::IdentityS3;
    m.src_dim_ = 4;
    m.tgt_dim_ = 4;
    m.radius_ = 1.0;
    return m;
}

template <class T>
void MapUnderTest::eval_impl(const T* in, T* out) const {
    switch (kind_) {
    case MapKind::HopfComplex:
        hopf_eval(2, radius_, in, out);
        return;
    case MapKind::HopfQuaternionic:
        hopf_eval(4, radius_, in, out);
        return;
    case MapKind::HopfOctonionic:
        hopf_eval(8, radius_, in, out);
        return;
    case MapKind::HopfMoebius: {
        T q[3];
        hopf_eval(2, 0.5, in, q);
        for (int i = 0; i < 3; ++i) q[i] = 2.0 * q[i]; // to the unit sphere
        T w[3];
        moebius_apply(moebius_, q, w);
        for (int i = 0; i < 3; ++i) out[i] = radius_ * w[i];
        return;
    }
    case MapKind::Equivariant: {
        const T r1s = in[0] * in[0] + in[1] * in[1];
        const T r2s = in[2] * in[2] + in[3] * in[3];
        if (value(r1s) < 1e-14 || value(r2s) < 1e-14)
            fail(ErrorCode::ChartDegenerate, "equivariant evaluation at a torus-degenerate point");
        const T r1 = sqrt(r1s);
        const T r2 = sqrt(r2s);
        const T s = atan2(r1, r2);
        const T a = profile_apply(profile_, s);
        const T sa = sin(a), ca = cos(a);
        T w1r, w1i, w2r, w2i;
        cpow_unit(in[0] / r1, in[1] / r1, k_, w1r, w1i);
        cpow_unit(in[2] / r2, in[3] / r2, l_, w2r, w2i);
        const T wr = w1r * w2r - w1i * w2i;
        const T wi = w1r * w2i + w1i * w2r;
        out[0] = sa * wr;
        out[1] = sa * wi;
        out[2] = ca;
        return;
    }
    case MapKind::Constant:
        for (int i = 0; i < tgt_dim_; ++i) out[i] = T(constant_point_[i]);
        return;
    case MapKind::IdentityS3:
        for (int i = 0; i < 4; ++i) out[i] = in[i];
        return;
    }
    fail(ErrorCode::InvalidArgument, "unknown map kind");
}

void MapUnderTest::eval(std::span<const double> in, std::span<double> out) const {
    eval_impl(in.data(), out.data());
}

void MapUnderTest::eval(std::span<const Jet2> in, std::span<Jet2> out) const {
    eval_impl(in.data(), out.data());
}

SpherePoint MapUnderTest::apply(const SpherePoint& p) const {
    if (p.ambient_dim() != src_dim_)
        fail(ErrorCode::InvalidArgument, "point dimension does not match the map source");
    Vec out(tgt_dim_);
    eval(std::span<const double>(p.coords), std::span<double>(out));
    return SpherePoint::on_sphere(std::move(out), radius_);
}

template void MapUnderTest::eval_impl<double>(const double*, double*) const;
template void MapUnderTest::eval_impl<Jet2>(const Jet2*, Jet2*) const;

} // namespace mmk
