#include <doctest.h>

#include <cmath>

#include "charts.hpp"
#include "hopfscan.hpp"
#include "rng.hpp"

using namespace mmk;

TEST_CASE("chart to ambient: poles and round trip") {
    const SpherePoint a = chart_to_ambient(HopfChart3{0.0, 0.0, M_PI / 2});
    CHECK(a.coords[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(a.coords[1]) < 1e-14);
    CHECK(std::fabs(a.coords[2]) < 1e-14);

    const SpherePoint b = chart_to_ambient(HopfChart3{0.0, 0.0, 0.0});
    CHECK(b.coords[2] == doctest::Approx(1.0).epsilon(1e-14));

    Sampler rng(7);
    for (int i = 0; i < 50; ++i) {
        HopfChart3 c;
        c.xi = rng.uniform(1e-3, 2 * M_PI - 1e-3);
        c.eta = rng.uniform(1e-3, 2 * M_PI - 1e-3);
        c.s = rng.uniform(kChartGuard, M_PI / 2 - kChartGuard);
        const HopfChart3 back = ambient_to_chart3(chart_to_ambient(c));
        CHECK(std::fabs(back.xi - c.xi) < 1e-10);
        CHECK(std::fabs(back.eta - c.eta) < 1e-10);
        CHECK(std::fabs(back.s - c.s) < 1e-10);
    }

    for (int i = 0; i < 20; ++i) {
        PolarChart2 c;
        c.sigma = rng.uniform(1e-3, 2 * M_PI - 1e-3);
        c.a = rng.uniform(kChartGuard, M_PI - kChartGuard);
        c.radius = 0.5;
        const PolarChart2 back = ambient_to_chart2(chart_to_ambient(c));
        CHECK(std::fabs(back.sigma - c.sigma) < 1e-10);
        CHECK(std::fabs(back.a - c.a) < 1e-10);
    }
}

TEST_CASE("s3 frame is orthonormal and tangent") {
    Sampler rng(11);
    for (int i = 0; i < 40; ++i) {
        HopfChart3 c;
        c.xi = rng.uniform(0.0, 2 * M_PI);
        c.eta = rng.uniform(0.0, 2 * M_PI);
        c.s = rng.uniform(kChartGuard, M_PI / 2 - kChartGuard);
        const auto frame = s3_frame(c);
        const SpherePoint p = chart_to_ambient(c);
        for (int a = 0; a < 3; ++a) {
            CHECK(std::fabs(dot(frame[a].vec, p.coords)) < 1e-12);
            for (int b = 0; b < 3; ++b) {
                const double expected = (a == b) ? 1.0 : 0.0;
                CHECK(std::fabs(dot(frame[a].vec, frame[b].vec) - expected) < 1e-12);
            }
        }
    }

    // |d_xi| = sin s, so v1 = d_xi * sqrt(2) at s = pi/4
    const HopfChart3 c{0.3, 1.1, M_PI / 4};
    const auto frame = s3_frame(c);
    const double h = 1e-6;
    HopfChart3 cp = c;
    cp.xi += h;
    const Vec dxi = scaled(sub(chart_to_ambient(cp).coords, chart_to_ambient(c).coords), 1.0 / h);
    for (int i = 0; i < 4; ++i)
        CHECK(frame[0].vec[i] == doctest::Approx(dxi[i] * std::sqrt(2.0)).epsilon(1e-5));

    CHECK_THROWS_AS(s3_frame(HopfChart3{0.0, 0.0, 1e-4}), Error);
}

TEST_CASE("s3 connection table") {
    const HopfChart3 c4{0.2, 0.9, M_PI / 4};
    const FrameConnectionTable t4 = s3_connection(c4);
    CHECK(t4.coefficients[0][0][2] == doctest::Approx(-1.0).epsilon(1e-14));

    const HopfChart3 c6{0.2, 0.9, M_PI / 6};
    const FrameConnectionTable t6 = s3_connection(c6);
    CHECK(t6.coefficients[1][1][2] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

    // nabla_{v3} v_j = 0 and skew symmetry in the last two slots
    Sampler rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        HopfChart3 c;
        c.xi = rng.uniform(0.0, 2 * M_PI);
        c.eta = rng.uniform(0.0, 2 * M_PI);
        c.s = rng.uniform(kChartGuard, M_PI / 2 - kChartGuard);
        const FrameConnectionTable t = s3_connection(c);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                CHECK(t.coefficients[2][j][k] == 0.0);
                CHECK(t.coefficients[0][j][k] == -t.coefficients[0][k][j]);
                CHECK(t.coefficients[1][j][k] == -t.coefficients[1][k][j]);
            }
    }
}

TEST_CASE("metric compatibility of the connection table") {
    // d/dt <V, W> along a chart curve equals <nabla V, W> + <V, nabla W>
    // for frame fields, with the derivative taken numerically
    const HopfChart3 c{0.7, 2.1, 0.6};
    const double h = 1e-6;
    for (int dir = 0; dir < 3; ++dir) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const auto at = [&](double t) {
                    HopfChart3 ct = c;
                    // move along the integral curve of v_dir in chart coordinates
                    if (dir == 0) ct.xi += t / std::sin(c.s);
                    if (dir == 1) ct.eta += t / std::cos(c.s);
                    if (dir == 2) ct.s += t;
                    const auto f = s3_frame(ct);
                    return dot(f[a].vec, f[b].vec);
                };
                const double lhs = (at(h) - at(-h)) / (2 * h);
                const FrameConnectionTable t = s3_connection(c);
                const double rhs = t.coefficients[dir][a][b] + t.coefficients[dir][b][a];
                CHECK(std::fabs(lhs - rhs) < 1e-6);
            }
    }
}

TEST_CASE("great circle jet: identity and constant maps") {
    Sampler rng(5);
    const MapUnderTest id = MapUnderTest::identity_s3();
    for (int i = 0; i < 10; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        const TangentVector v = rng.unit_tangent(p);
        const GreatCircleJet j = great_circle_jet(id, p, v);
        for (int t = 0; t < 4; ++t) CHECK(j.first[t] == doctest::Approx(v.vec[t]).epsilon(1e-12));
        // tangential part of the second derivative vanishes
        const Vec tang = tangential_part(j.second, p.coords);
        CHECK(norm(tang) < 1e-12);
    }

    const MapUnderTest cst =
        MapUnderTest::constant(SpherePoint::on_sphere({0.0, 0.0, 0.5}, 0.5), 4);
    const SpherePoint p = rng.sphere_point(4);
    const TangentVector v = rng.unit_tangent(p);
    const GreatCircleJet j = great_circle_jet(cst, p, v);
    CHECK(norm(j.first) == 0.0);
    CHECK(norm(j.second) == 0.0);
}

TEST_CASE("great circle jet: Hopf horizontal speed and FD backend agreement") {
    Sampler rng(9);
    const MapUnderTest f = MapUnderTest::hopf_complex(1.0);
    for (int i = 0; i < 10; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        const Vec v = horizontal_unit(2, p, rng);
        const GreatCircleJet j = great_circle_jet(f, p, v);
        CHECK(norm(j.first) == doctest::Approx(2.0).epsilon(1e-10));

        JetOptions fd;
        fd.backend = JetBackend::FiniteDifference;
        const GreatCircleJet jf = great_circle_jet(f, p, v, fd);
        for (int t = 0; t < 3; ++t) {
            CHECK(std::fabs(jf.first[t] - j.first[t]) < 1e-8);
            CHECK(std::fabs(jf.second[t] - j.second[t]) < 1e-5);
        }
    }
}

TEST_CASE("great circle jet: chain rule through a composition") {
    Sampler rng(13);
    const MoebiusMap m{{1.2, 0.1}, {0.3, 0.0}, {0.0, 0.0}, {1.0, -0.2}};
    const MapUnderTest hopf = MapUnderTest::hopf_complex(1.0);
    const MapUnderTest composed = MapUnderTest::hopf_moebius(m, 1.0);
    for (int i = 0; i < 20; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        const TangentVector v = rng.unit_tangent(p);
        const Vec direct = great_circle_jet(composed, p, v).first;

        const Vec dfv = great_circle_jet(hopf, p, v).first;
        const SpherePoint q = hopf.apply(p);
        const Vec chained = moebius_push(m, q, dfv);
        for (int t = 0; t < 3; ++t) CHECK(std::fabs(direct[t] - chained[t]) < 1e-8);
    }
}
