#include <doctest.h>

#include <cmath>

#include "charts.hpp"
#include "rng.hpp"
#include "structure.hpp"

using namespace mmk;

namespace {

GeneratingProfile perturbed() {
    return GeneratingProfile::analytic(
        [](double s) { return 2 * s + 0.3 * std::sin(2 * s); },
        [](double s) { return 2 + 0.6 * std::cos(2 * s); },
        [](double s) { return -1.2 * std::sin(2 * s); });
}

HopfChart3 interior_chart(Sampler& rng) {
    HopfChart3 c;
    c.xi = rng.uniform(0, 2 * M_PI);
    c.eta = rng.uniform(0, 2 * M_PI);
    c.s = rng.uniform(5 * kChartGuard, M_PI / 2 - 5 * kChartGuard);
    return c;
}

} // namespace

TEST_CASE("angle functions") {
    const AngleFunctions hopf = angle_functions(2.0, 2.0);
    CHECK(hopf.u1 == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(hopf.u2 == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(hopf.w == doctest::Approx(1.0).epsilon(1e-14));

    const AngleFunctions degenerate = angle_functions(0.0, 0.0);
    CHECK(degenerate.u1 == 1.0);
    CHECK(degenerate.u2 == 0.0);
    CHECK(degenerate.w == 1.0);

    // w <= 1 with equality exactly at lambda = mu
    Sampler rng(13);
    for (int i = 0; i < 200; ++i) {
        const double l = std::exp(rng.uniform(-2, 2));
        const double m = l + std::fabs(rng.gauss()) * 0.5;
        const AngleFunctions a = angle_functions(l, m);
        CHECK(a.w <= 1.0 + 1e-14);
        if (std::fabs(l - m) <= 1e-8) CHECK(std::fabs(a.w - 1.0) <= 1e-10);
        if (std::fabs(a.w - 1.0) <= 1e-10) CHECK(std::fabs(l - m) <= 1e-4);
    }

    // strictly below 1 on the perturbed family
    const MapUnderTest f = MapUnderTest::equivariant(1, 1, perturbed());
    const AngleFunctions a = angle_functions(f, chart_to_ambient(HopfChart3{0.4, 1.0, M_PI / 4}));
    CHECK(a.w < 1.0 - 1e-4);
}

TEST_CASE("Gauss map tensor: both routes and the conformal symmetry") {
    const MapUnderTest f = MapUnderTest::equivariant(1, 1, perturbed());
    Sampler rng(23);
    for (int i = 0; i < 10; ++i) {
        const SpherePoint p = chart_to_ambient(interior_chart(rng));
        const GaussTensor g = gauss_tensor(f, p);
        CHECK(g.max_discrepancy < 1e-5);
        // equivariant maps have h^4_11 = 0, hence phi_12 = 0
        CHECK(std::fabs(g.phi_h[0][0]) < 1e-8);
    }

    // weakly conformal symmetry |phi(e_2)| = |phi(e_3)| on the tie-broken frame
    const MapUnderTest hopf = MapUnderTest::hopf_complex(1.0);
    for (int i = 0; i < 5; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        CHECK_THROWS_AS(gauss_tensor(hopf, p, false), Error);
        const GaussTensor g = gauss_tensor(hopf, p, true);
        CHECK(g.tie_broken);
        const double n2 = std::hypot(g.phi_h[1][0], g.phi_h[1][1]);
        const double n3 = std::hypot(g.phi_h[2][0], g.phi_h[2][1]);
        CHECK(std::fabs(n2 - n3) < 1e-8);
        CHECK(std::fabs(g.re_norm2 - g.im_norm2) < 1e-8);
    }
}

TEST_CASE("structure residual assembler vanishes on a synthetic constant feed") {
    StructureInputs in;
    in.lambda = 1.0;
    in.mu = 2.0;
    // all h, b and measured derivative terms zero: every identity degenerates
    // to 0 = 0 and the assembler must report exact zeros
    for (const NamedResidual& r : assemble_structure_residuals(in)) {
        CAPTURE(r.name);
        CHECK(r.value == 0.0);
    }
}

TEST_CASE("structure residuals on the perturbed equivariant family") {
    const MapUnderTest f = MapUnderTest::equivariant(1, 1, perturbed());
    Sampler rng(29);
    int tested = 0;
    while (tested < 8) {
        const SpherePoint p = chart_to_ambient(interior_chart(rng));
        const SingularData sd = singular_decompose(f, p);
        if (sd.mu - sd.lambda < 1e-3) continue;
        ++tested;
        for (const NamedResidual& r : structure_residuals(f, p)) {
            CAPTURE(r.name);
            const bool first_order = r.name.rfind("7.1", 0) == 0 || r.name.rfind("7.5", 0) == 0;
            CHECK(r.value < (first_order ? 1e-5 : 1e-4));
        }
    }
}

TEST_CASE("Bochner residuals of the minimal families") {
    // weakly conformal compositions into the unit sphere
    const MapUnderTest G = MapUnderTest::hopf_moebius(MoebiusMap::dilation(2.0), 1.0);
    Sampler rng(37);
    for (int i = 0; i < 10; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        const BochnerResiduals b = bochner_residuals(G, p);
        CHECK(b.grad_u1 < 1e-5);
        CHECK(b.lap_u1 < 1e-3);
        CHECK(b.grad_u2 < 1e-5);
        CHECK(b.lap_u2 < 1e-3);
        CHECK(b.measured_grad_w < 1e-6); // w constant on the conformal family
        CHECK(b.grad_w < 1e-3);
        CHECK(b.lap_w < 1e-3);
        CHECK(std::fabs(b.angles.w - 1.0) < 1e-10);
    }

    // constant u1: the Laplacian formula balances the quadratic terms
    const MapUnderTest hopf = MapUnderTest::hopf_complex(1.0);
    for (int i = 0; i < 5; ++i) {
        const BochnerResiduals b = bochner_residuals(hopf, rng.sphere_point(4));
        CHECK(b.lap_u1 < 1e-4);
    }

    // non-minimal input is rejected
    const MapUnderTest bad = MapUnderTest::equivariant(1, 1, perturbed());
    try {
        bochner_residuals(bad, chart_to_ambient(HopfChart3{0.3, 0.8, M_PI / 4}));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotMinimal);
    }
}

TEST_CASE("pinching quantity") {
    Sampler rng(41);
    // conformal points: the (mu - lambda) factor kills C
    const MapUnderTest hopf = MapUnderTest::hopf_complex(1.0);
    CHECK(std::fabs(pinching_quantity(hopf, rng.sphere_point(4))) < 1e-10);

    // equivariant family: C equals the closed expression and stays nonnegative
    const MapUnderTest f = MapUnderTest::equivariant(1, 1, perturbed());
    int tested = 0;
    while (tested < 50) {
        const SpherePoint p = chart_to_ambient(interior_chart(rng));
        const SingularData sd = singular_decompose(f, p);
        if (sd.mu - sd.lambda < 1e-3) continue;
        ++tested;
        const double C = pinching_quantity(f, p);
        const double closed = (sd.mu - sd.lambda) * (sd.mu - sd.lambda) /
                              ((1 + sd.lambda * sd.lambda) * (1 + sd.mu * sd.mu));
        CHECK(std::fabs(C - closed) < 1e-6);
        CHECK(C >= -1e-12);
    }
}
