// Acceptance suite: every quantitative claim the library must reproduce,
// one pass/fail line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "algebra.hpp"
#include "charts.hpp"
#include "curvature.hpp"
#include "equivariant.hpp"
#include "graphcore.hpp"
#include "hopfscan.hpp"
#include "mmk/mmk.h"
#include "rng.hpp"
#include "structure.hpp"
#include "suites.hpp"

using namespace mmk;

namespace {

int failures = 0;

void report(int number, const char* what, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, what,
                detail.c_str());
    if (!pass) ++failures;
}

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

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

void criterion1() {
    const double t0 = now();
    const std::uint64_t seed = 1234;
    bool pass = true;
    std::string detail;

    struct Row {
        MapUnderTest map;
        double expect;
        double tol;
        const char* tag;
    };
    const Row rows[4] = {{MapUnderTest::hopf_complex(1.0), 16.0 / 25.0, 1e-6, "unit"},
                         {MapUnderTest::hopf_complex(0.5), 1.0, 1e-6, "half"},
                         {MapUnderTest::hopf_quaternionic(), 6.0, 1e-5, "quat"},
                         {MapUnderTest::hopf_octonionic(), 28.0, 1e-4, "oct"}};
    for (const Row& r : rows) {
        Sampler rng(seed);
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            const SpherePoint p = rng.sphere_point(r.map.source_ambient_dim());
            dev = std::max(dev, std::fabs(fundamental_invariants(r.map, p).normA2 - r.expect));
        }
        pass = pass && dev <= r.tol;
        detail += std::string(r.tag) + " dev " + format_double(dev) + "; ";
    }
    {
        Sampler rng(seed);
        const MapUnderTest f = MapUnderTest::hopf_complex(1.0);
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            const GraphData d = decompose_graph(f, rng.sphere_point(4));
            dev = std::max({dev, std::fabs(d.sigma[0]), std::fabs(d.sigma[1] - 2.0),
                            std::fabs(d.sigma[2] - 2.0)});
        }
        pass = pass && dev <= 1e-8;
        detail += "sv dev " + format_double(dev) + "; ";
    }
    const double dt = now() - t0;
    pass = pass && dt < 10.0;
    detail += "runtime " + format_double(dt) + "s";
    report(1, "constant |A|^2 of the bundle maps and (0,2,2) singular values", pass, detail);
}

void criterion2() {
    const std::complex<double> I(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    const MoebiusMap fam[5] = {MoebiusMap::identity(),
                               {{r, 0}, r * I, r * I, {r, 0}},
                               MoebiusMap::dilation(2.0),
                               {{1, 0}, {0.5, 0}, {0, 0}, {1, 0}},
                               {1.0 + 0.2 * I, {0.3, 0}, {-0.1, 0}, {1, 0}}};
    double maxH = 0.0;
    const MapUnderTest hopfs[3] = {MapUnderTest::hopf_complex(0.5),
                                   MapUnderTest::hopf_quaternionic(),
                                   MapUnderTest::hopf_octonionic()};
    for (const MapUnderTest& f : hopfs) {
        Sampler rng(99);
        for (int i = 0; i < 50; ++i)
            maxH = std::max(maxH,
                            fundamental_invariants(f, rng.sphere_point(f.source_ambient_dim()))
                                .normH);
    }
    for (const MoebiusMap& m : fam) {
        Sampler rng(99);
        const MapUnderTest g = MapUnderTest::hopf_moebius(m, 0.5);
        for (int i = 0; i < 50; ++i)
            maxH = std::max(maxH, mean_curvature_residual(g, rng.sphere_point(4)));
    }
    report(2, "minimality certificates |H| <= 1e-6", maxH <= 1e-6,
           "max |H| " + format_double(maxH));
}

void criterion3() {
    const ComposedCheckResult r = composed_invariant_check(MoebiusMap::dilation(2.0), 50, 555);
    report(3, "composed-map |A|^2 matches the conformal-factor formula within 1e-4",
           r.max_residual <= 1e-4, "max residual " + format_double(r.max_residual));
}

void criterion4() {
    const double t0 = now();
    bool pass = true;
    std::string detail;

    const BvpResult r = solve_bvp(1, 1);
    if (!r.profile) {
        pass = false;
        detail = "no solution returned; ";
    } else {
        const double slope_err = std::fabs(r.aS0 - 2.0);
        double sup = 0.0;
        for (std::size_t i = 0; i < r.profile->grid().size(); ++i)
            sup = std::max(sup, std::fabs(r.profile->values()[i] - 2.0 * r.profile->grid()[i]));
        pass = pass && slope_err <= 1e-6 && sup <= 1e-6;
        detail += "slope err " + format_double(slope_err) + ", sup|a-2s| " + format_double(sup) +
                  "; ";
    }
    const BvpResult r22 = solve_bvp(2, 2);
    const BvpResult r12 = solve_bvp(1, 2);
    pass = pass && r22.nonexistence.has_value() && r12.nonexistence.has_value();
    detail += std::string("(2,2) ") + (r22.nonexistence ? "nonexistent" : "found") + ", (1,2) " +
              (r12.nonexistence ? "nonexistent" : "found") + "; ";
    const double dt = now() - t0;
    pass = pass && dt < 5.0;
    detail += "runtime " + format_double(dt) + "s";
    report(4, "boundary value solve reproduces the fibration profile and the obstructions",
           pass, detail);
}

void criterion5() {
    RunConfig cfg;
    cfg.suite = "verify-structure";
    cfg.samples = 200;
    cfg.seed = 2718;
    const Report rep = run_suite(cfg);
    bool pass = true;
    std::string detail;
    for (const Check& c : rep.checks) {
        if (c.name.rfind("7.", 0) != 0) continue;
        pass = pass && c.pass;
        if (!c.pass) detail += c.name + " measured " + format_double(c.measured) + "; ";
    }
    if (detail.empty()) detail = "all dictionaries and connection tables within tolerance";
    report(5, "structure-equation suite at 200 seeded points", pass, detail);
}

void criterion6() {
    RunConfig cfg;
    cfg.suite = "verify-bochner";
    cfg.samples = 50;
    cfg.seed = 3141;
    const Report rep = run_suite(cfg);
    bool pass = rep.failed() == 0;
    std::string detail;
    for (const Check& c : rep.checks)
        if (!c.pass) detail += c.name + " measured " + format_double(c.measured) + "; ";
    if (detail.empty()) detail = "gradient and Laplacian formulas within tolerance";
    report(6, "angle-function gradient/Laplacian suite on the conformal family", pass, detail);
}

void criterion7() {
    const GeneratingProfile prof = perturbed();
    const MapUnderTest f = MapUnderTest::equivariant(1, 1, prof);
    Sampler rng(4321);
    double dev = 0.0, neg = 0.0;
    int tested = 0;
    while (tested < 200) {
        const SpherePoint p = chart_to_ambient(interior_chart(rng));
        const SingularData sd = singular_decompose(f, p);
        if (sd.mu - sd.lambda < 1e-3) continue;
        ++tested;
        const double C = pinching_quantity(f, p);
        const double closed = (sd.mu - sd.lambda) * (sd.mu - sd.lambda) /
                              ((1 + sd.lambda * sd.lambda) * (1 + sd.mu * sd.mu));
        dev = std::max(dev, std::fabs(C - closed));
        neg = std::max(neg, -C);
    }
    report(7, "pinching quantity matches its closed form and stays nonnegative",
           dev <= 1e-6 && neg <= 1e-12,
           "max dev " + format_double(dev) + ", max negativity " + format_double(neg));
}

void criterion8() {
    bool pass = true;
    std::string detail;
    for (const auto& kl : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
        const GeneratingProfile prof = conformal_profile(kl.first, kl.second, 1.0);
        Sampler rng(87);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double s = rng.uniform(5 * kChartGuard, M_PI / 2 - 5 * kChartGuard);
            const GeneratingProfile::Eval2 e = prof.eval2(s);
            worst = std::max(worst,
                             std::fabs(conformality_residual(kl.first, kl.second, e.a, e.as, s)));
        }
        pass = pass && worst <= 1e-8;
        detail += "(" + std::to_string(kl.first) + "," + std::to_string(kl.second) + ") " +
                  format_double(worst) + "; ";
    }
    report(8, "weakly conformal closed forms satisfy the conformality equation", pass, detail);
}

void criterion9() {
    bool pass = true;
    std::string detail;

    // octonion norm multiplicativity
    {
        Sampler rng(11);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            Octonion x, y;
            for (int t = 0; t < 8; ++t) {
                x.a[t] = rng.gauss();
                y.a[t] = rng.gauss();
            }
            const double rel =
                std::fabs((x * y).norm() - x.norm() * y.norm()) / (x.norm() * y.norm());
            worst = std::max(worst, rel);
        }
        pass = pass && worst <= 1e-12;
        detail += "norm-mult " + format_double(worst) + "; ";
    }
    // frame orthonormality
    {
        Sampler rng(12);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto fr = s3_frame(interior_chart(rng));
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    worst = std::max(worst, std::fabs(dot(fr[a].vec, fr[b].vec) -
                                                      (a == b ? 1.0 : 0.0)));
        }
        pass = pass && worst <= 1e-12;
        detail += "frames " + format_double(worst) + "; ";
    }
    // w <= 1 with equality iff lambda = mu
    {
        Sampler rng(13);
        bool ok = true;
        for (int i = 0; i < 300; ++i) {
            const double l = std::exp(rng.uniform(-2, 2));
            const double m = (i % 3 == 0) ? l : l + std::fabs(rng.gauss());
            const AngleFunctions a = angle_functions(l, m);
            if (a.w > 1.0 + 1e-14) ok = false;
            if (std::fabs(l - m) <= 1e-8 && std::fabs(a.w - 1.0) > 1e-10) ok = false;
            if (std::fabs(a.w - 1.0) <= 1e-10 && std::fabs(l - m) > 1e-4) ok = false;
        }
        pass = pass && ok;
        detail += std::string("angle bound ") + (ok ? "ok" : "violated") + "; ";
    }
    // Gauss and Codazzi residuals on the equivariant family
    {
        const GeneratingProfile prof = perturbed();
        Sampler rng(14);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const HopfChart3 c = interior_chart(rng);
            const auto g = gauss_residuals(1, 1, prof, c);
            for (double v : g) worst = std::max(worst, v);
            const int a = static_cast<int>(rng.raw() % 3);
            int b = static_cast<int>(rng.raw() % 3);
            if (b == a) b = (a + 1) % 3;
            worst = std::max(worst, codazzi_residual(1, 1, prof, c, a, b,
                                                     static_cast<int>(rng.raw() % 3)));
        }
        pass = pass && worst <= 1e-4;
        detail += "gauss/codazzi " + format_double(worst);
    }
    report(9, "property suites: algebra, frames, angle bound, curvature equations", pass, detail);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
