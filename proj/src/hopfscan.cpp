#include "hopfscan.hpp"

#include <cmath>

#include "algebra.hpp"
#include "error.hpp"
#include "moebius.hpp"
#include "rng.hpp"

namespace mmk {

std::vector<Vec> vertical_fields(int algebra_dim, const SpherePoint& p) {
    const int d = algebra_dim;
    if (p.ambient_dim() != 2 * d)
        fail(ErrorCode::InvalidArgument, "vertical fields: dimension mismatch");
    std::vector<Vec> zetas;
    zetas.reserve(d - 1);
    for (int i = 1; i < d; ++i) {
        Vec unit(d, 0.0);
        unit[i] = 1.0;
        Vec z(2 * d, 0.0);
        alg_mul(d, unit.data(), p.coords.data(), z.data());
        alg_mul(d, unit.data(), p.coords.data() + d, z.data() + d);
        for (double& x : z) x = -x;
        zetas.push_back(std::move(z));
    }
    return zetas;
}

Vec phi_field(int algebra_dim, int i, const SpherePoint& p, const Vec& v) {
    const int d = algebra_dim;
    Vec unit(d, 0.0);
    unit[i] = 1.0;
    Vec jv(2 * d, 0.0);
    alg_mul(d, unit.data(), v.data(), jv.data());
    alg_mul(d, unit.data(), v.data() + d, jv.data() + d);
    Vec zeta(2 * d, 0.0);
    alg_mul(d, unit.data(), p.coords.data(), zeta.data());
    alg_mul(d, unit.data(), p.coords.data() + d, zeta.data() + d);
    for (double& x : zeta) x = -x;
    axpy(jv, -dot(v, zeta), p.coords);
    return jv;
}

Vec horizontal_unit(int algebra_dim, const SpherePoint& p, Sampler& rng) {
    const std::vector<Vec> zetas = vertical_fields(algebra_dim, p);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec v = tangential_part(rng.gauss_vec(p.ambient_dim()), p.coords);
        for (const Vec& z : zetas) axpy(v, -dot(v, z), z);
        if (norm(v) > 1e-6) return normalized(v);
    }
    fail(ErrorCode::NumericalBreakdown, "could not sample a horizontal direction");
}

Vec moebius_push(const MoebiusMap& m, const SpherePoint& q, const Vec& w) {
    const double n = norm(w);
    if (n == 0.0) return Vec(3, 0.0);
    Jet2 in[3], out[3];
    for (int i = 0; i < 3; ++i) in[i] = Jet2(q.coords[i], w[i] / n, -q.coords[i]);
    moebius_apply(m, in, out);
    Vec r(3);
    for (int i = 0; i < 3; ++i) r[i] = out[i].d1 * n;
    return r;
}

double moebius_factor_differential_gap(const MoebiusMap& m, const SpherePoint& q) {
    const double lambda = moebius_conformal_factor(m, q.coords.data());
    const std::vector<Vec> t = tangent_basis(q);
    const Vec w1 = moebius_push(m, q, t[0]);
    const Vec w2 = moebius_push(m, q, t[1]);
    std::vector<Vec> G = {{dot(w1, w1), dot(w1, w2)}, {dot(w1, w2), dot(w2, w2)}};
    const EigenSym eig = jacobi_eigen(G);
    double gap = 0.0;
    for (double ev : eig.evals)
        gap = std::max(gap, std::fabs(std::sqrt(std::max(ev, 0.0)) - lambda));
    return gap;
}

ScanResult invariant_scan(const MapUnderTest& f, int samples, std::uint64_t seed) {
    if (samples < 1) fail(ErrorCode::InvalidArgument, "invariant_scan needs samples >= 1");
    Sampler rng(seed);
    ScanResult out;
    out.samples = samples;
    std::vector<double> a2(samples);
    for (int i = 0; i < samples; ++i) {
        const SpherePoint p = rng.sphere_point(f.source_ambient_dim());
        const InvariantSample inv = fundamental_invariants(f, p);
        a2[i] = inv.normA2;
        out.mean_normA2 += inv.normA2 / samples;
        out.max_H = std::max(out.max_H, inv.normH);
    }
    for (double v : a2) out.max_dev_normA2 = std::max(out.max_dev_normA2, std::fabs(v - out.mean_normA2));
    return out;
}

ComposedCheckResult composed_invariant_check(const MoebiusMap& m, int samples,
                                             std::uint64_t seed) {
    if (samples < 1) fail(ErrorCode::InvalidArgument, "composed check needs samples >= 1");
    m.validate();
    const MapUnderTest G = MapUnderTest::hopf_moebius(m, 0.5);
    const MapUnderTest hopf_unit = MapUnderTest::hopf_complex(1.0);
    Sampler rng(seed);
    ComposedCheckResult out;
    out.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        const InvariantSample inv = fundamental_invariants(G, p);

        const SpherePoint q = hopf_unit.apply(p); // Moebius input on the unit sphere
        const double lam = moebius_conformal_factor(m, q.coords.data());
        double grad[3];
        moebius_factor_gradient(m, q.coords.data(), grad);
        // gradient on the radius-1/2 target carries twice the unit-sphere norm
        const double grad2_half = 4.0 * (grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]);
        const double w = 1.0 + lam * lam;
        const double formula = 4.0 * (lam * lam * w + grad2_half) / (w * w * w);

        out.max_residual = std::max(out.max_residual, std::fabs(inv.normA2 - formula));
        out.max_H = std::max(out.max_H, inv.normH);
    }
    return out;
}

} // namespace mmk
