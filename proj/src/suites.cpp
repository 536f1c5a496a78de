#include "suites.hpp"

#include <cmath>
#include <functional>

#include "curvature.hpp"
#include "error.hpp"
#include "hopfscan.hpp"
#include "rng.hpp"
#include "structure.hpp"

namespace mmk {

namespace {

double sq(double x) { return x * x; }

struct TolTable {
    const RunConfig* cfg;
    double operator()(const std::string& name, double fallback) const {
        const auto it = cfg->tol_overrides.find(name);
        const double base = (it != cfg->tol_overrides.end()) ? it->second : fallback;
        return base * cfg->tol_scale;
    }
};

GeneratingProfile perturbed_hopf_profile() {
    return GeneratingProfile::analytic(
        [](double s) { return 2.0 * s + 0.3 * std::sin(2.0 * s); },
        [](double s) { return 2.0 + 0.6 * std::cos(2.0 * s); },
        [](double s) { return -1.2 * std::sin(2.0 * s); });
}

HopfChart3 random_chart(Sampler& rng, double guard = 5 * kChartGuard) {
    HopfChart3 c;
    c.xi = rng.uniform(0.0, 2.0 * M_PI);
    c.eta = rng.uniform(0.0, 2.0 * M_PI);
    c.s = rng.uniform(guard, M_PI / 2 - guard);
    return c;
}

std::vector<MoebiusMap> moebius_family() {
    const std::complex<double> I(0.0, 1.0);
    std::vector<MoebiusMap> fam;
    fam.push_back(MoebiusMap::identity());
    // rotation by pi/2 about a tilted axis
    fam.push_back(MoebiusMap{{std::cos(M_PI / 4), 0}, 0.3 * I, 0.3 * I, {std::cos(M_PI / 4), 0}});
    fam.push_back(MoebiusMap::dilation(2.0));
    fam.push_back(MoebiusMap{{1, 0}, {0.5, 0}, {0, 0}, {1, 0}}); // parabolic
    fam.push_back(MoebiusMap{1.0 + 0.2 * I, {0.3, 0.0}, {-0.1, 0.0}, {1.0, 0.0}});
    return fam;
}

Report hopf_invariants_suite(const RunConfig& cfg) {
    const TolTable tol{&cfg};
    const int n = cfg.samples > 0 ? cfg.samples : 100;
    Report rep;
    rep.suite = "hopf-invariants";
    rep.seed = cfg.seed;

    struct Row {
        const char* name;
        const char* anchor;
        MapUnderTest map;
        double expect_a2;
        double tol_a2;
    };
    const std::vector<Row> rows = {
        {"complex-unit", "|A|^2=16/25", MapUnderTest::hopf_complex(1.0), 16.0 / 25.0, 1e-6},
        {"complex-half", "|A|^2=n", MapUnderTest::hopf_complex(0.5), 1.0, 1e-6},
        {"quaternionic", "|A|^2=6n", MapUnderTest::hopf_quaternionic(), 6.0, 1e-5},
        {"octonionic", "|A|^2=28", MapUnderTest::hopf_octonionic(), 28.0, 1e-4},
    };
    for (const Row& r : rows) {
        const ScanResult scan = invariant_scan(r.map, n, cfg.seed);
        double max_dev = std::fabs(scan.mean_normA2 - r.expect_a2) + scan.max_dev_normA2;
        rep.add(std::string(r.name) + ":normA2", r.anchor, scan.mean_normA2, r.expect_a2,
                tol(std::string(r.name) + ":normA2", r.tol_a2));
        rep.add_bound(std::string(r.name) + ":normA2-maxdev", r.anchor, max_dev,
                      tol(std::string(r.name) + ":normA2-maxdev", r.tol_a2));
        rep.add_bound(std::string(r.name) + ":H", "minimal graph: H=0", scan.max_H,
                      tol(std::string(r.name) + ":H", 1e-6));
    }

    // singular values of the unit-target complex bundle map
    {
        Sampler rng(cfg.seed);
        const MapUnderTest f = MapUnderTest::hopf_complex(1.0);
        double dev0 = 0.0, dev2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const SpherePoint p = rng.sphere_point(4);
            const GraphData d = decompose_graph(f, p);
            dev0 = std::max(dev0, std::fabs(d.sigma[0]));
            dev2 = std::max(dev2, std::fabs(d.sigma[1] - 2.0));
            dev2 = std::max(dev2, std::fabs(d.sigma[2] - 2.0));
        }
        rep.add_bound("complex-unit:sv-kernel", "singular values (0,2,2)", dev0,
                      tol("complex-unit:sv-kernel", 1e-8));
        rep.add_bound("complex-unit:sv-two", "singular values (0,2,2)", dev2,
                      tol("complex-unit:sv-two", 1e-8));
    }

    // Moebius compositions stay minimal; one non-isometric member is checked
    // against the closed curvature-norm formula
    const std::vector<MoebiusMap> fam = cfg.moebius ? std::vector<MoebiusMap>{*cfg.moebius}
                                                    : moebius_family();
    const int nm = std::max(10, n / 2);
    double maxH = 0.0;
    for (const MoebiusMap& m : fam) {
        const ComposedCheckResult r = composed_invariant_check(m, nm, cfg.seed);
        maxH = std::max(maxH, r.max_H);
    }
    rep.add_bound("moebius:H", "compositions are minimal maps", maxH, tol("moebius:H", 1e-6));
    {
        const MoebiusMap dil = cfg.moebius ? *cfg.moebius : MoebiusMap::dilation(2.0);
        const ComposedCheckResult r = composed_invariant_check(dil, nm, cfg.seed);
        rep.add_bound("moebius:formula", "|A_G|^2=4(l^2(1+l^2)+|grad l|^2)/(1+l^2)^3",
                      r.max_residual, tol("moebius:formula", 1e-4));
    }
    return rep;
}

Report verify_structure_suite(const RunConfig& cfg) {
    const TolTable tol{&cfg};
    const int n = cfg.samples > 0 ? cfg.samples : 200;
    Report rep;
    rep.suite = "verify-structure";
    rep.seed = cfg.seed;

    const GeneratingProfile profile = perturbed_hopf_profile();
    const MapUnderTest f = MapUnderTest::equivariant(cfg.k, cfg.l, profile);

    Sampler rng(cfg.seed);
    std::map<std::string, double> worst;
    double pinch_dev = 0.0, pinch_neg = 0.0, phi_gap = 0.0;
    int accepted = 0;
    while (accepted < n) {
        const HopfChart3 c = random_chart(rng);
        const SpherePoint p = chart_to_ambient(c);
        const GraphData d = decompose_graph(f, p);
        if (d.sigma[2] - d.sigma[1] < 1e-3) continue; // frame would be ill-conditioned
        ++accepted;

        for (const NamedResidual& r : structure_residuals(f, p))
            worst[r.name] = std::max(worst[r.name], r.value);

        const SingularData sd = singular_decompose(f, p);
        const HessianComponents bc = hessian_B(f, p, sd);
        const FundamentalForms ff = second_fundamental_form(f, p, sd, bc);
        const double C = pinching_quantity(ff, sd.lambda, sd.mu);
        const double closed = sq(sd.mu - sd.lambda) / ((1 + sq(sd.lambda)) * (1 + sq(sd.mu)));
        pinch_dev = std::max(pinch_dev, std::fabs(C - closed));
        pinch_neg = std::max(pinch_neg, -C);

        const GaussTensor gt = gauss_tensor(f, p);
        phi_gap = std::max(phi_gap, gt.max_discrepancy);
    }

    const auto group_max = [&](const std::string& prefix) {
        double v = 0.0;
        for (const auto& [name, val] : worst)
            if (name.rfind(prefix, 0) == 0) v = std::max(v, val);
        return v;
    };
    rep.add_bound("7.1:b-dict", "b vs h and derivative dictionary", group_max("7.1:b"),
                  tol("7.1:b-dict", 1e-5));
    rep.add_bound("7.1:arctan-dict", "h = e(arctan of singular value)", group_max("7.1:h"),
                  tol("7.1:arctan-dict", 1e-5));
    rep.add_bound("7.2:connection", "spherical connection on the alpha frame", group_max("7.2"),
                  tol("7.2:connection", 1e-4));
    rep.add_bound("7.3:normal-connection", "normal connection of the graph", group_max("7.3"),
                  tol("7.3:normal-connection", 1e-4));
    rep.add_bound("7.4:graph-connection", "graph-metric connection and brackets", group_max("7.4"),
                  tol("7.4:graph-connection", 1e-4));
    rep.add_bound("7.5:gauss-tensor", "phi components from h quotients", group_max("7.5"),
                  tol("7.5:gauss-tensor", 1e-5));
    rep.add_bound("7.5:dual-backend", "direct phi vs h-quotient phi", phi_gap,
                  tol("7.5:dual-backend", 1e-5));
    rep.add_bound("pinching:match", "C=(l3-l2)^2/((1+l2^2)(1+l3^2))", pinch_dev,
                  tol("pinching:match", 1e-6));
    rep.add_bound("pinching:nonneg", "C>=0 on the equivariant family", pinch_neg,
                  tol("pinching:nonneg", 1e-12));
    return rep;
}

Report verify_bochner_suite(const RunConfig& cfg) {
    const TolTable tol{&cfg};
    const int n = cfg.samples > 0 ? cfg.samples : 50;
    Report rep;
    rep.suite = "verify-bochner";
    rep.seed = cfg.seed;

    // unit target: the angle-function formulas are stated for maps between
    // unit spheres (they carry the target curvature implicitly)
    const MoebiusMap mob = cfg.moebius ? *cfg.moebius : MoebiusMap::dilation(2.0);
    const MapUnderTest G = MapUnderTest::hopf_moebius(mob, 1.0);

    Sampler rng(cfg.seed);
    BochnerResiduals worst;
    double max_grad_w_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const SpherePoint p = rng.sphere_point(4);
        const BochnerResiduals r = bochner_residuals(G, p);
        worst.grad_u1 = std::max(worst.grad_u1, r.grad_u1);
        worst.lap_u1 = std::max(worst.lap_u1, r.lap_u1);
        worst.grad_u2 = std::max(worst.grad_u2, r.grad_u2);
        worst.lap_u2 = std::max(worst.lap_u2, r.lap_u2);
        worst.grad_w = std::max(worst.grad_w, r.grad_w);
        worst.lap_w = std::max(worst.lap_w, r.lap_w);
        max_grad_w_norm = std::max(max_grad_w_norm, r.measured_grad_w);
    }
    rep.add_bound("lapu:gradient", "grad u1 = -u1 sum (l h^4_k2 + m h^5_k3) e_k", worst.grad_u1,
                  tol("lapu:gradient", 1e-5));
    rep.add_bound("lapu:laplacian", "Delta u1 formula", worst.lap_u1, tol("lapu:laplacian", 1e-3));
    rep.add_bound("lapv:gradient", "grad u2 = u1 sum (m h^4_k2 + l h^5_k3) e_k", worst.grad_u2,
                  tol("lapv:gradient", 1e-5));
    rep.add_bound("lapv:laplacian", "Delta u2 formula", worst.lap_u2, tol("lapv:laplacian", 1e-3));
    rep.add_bound("w:gradient-norm", "w constant on the weakly conformal family", max_grad_w_norm,
                  tol("w:gradient-norm", 1e-6));
    rep.add_bound("w:gradient-formula", "|grad w|^2 closed form", worst.grad_w,
                  tol("w:gradient-formula", 1e-3));
    rep.add_bound("w:laplacian", "Delta w formula", worst.lap_w, tol("w:laplacian", 1e-3));

    // the unit-target bundle map has constant u1; both sides of the
    // Laplacian formula must vanish together
    {
        const MapUnderTest f = MapUnderTest::hopf_complex(1.0);
        Sampler rng2(cfg.seed + 1);
        double lap = 0.0;
        for (int i = 0; i < std::min(n, 20); ++i) {
            const BochnerResiduals r = bochner_residuals(f, rng2.sphere_point(4));
            lap = std::max(lap, r.lap_u1);
        }
        rep.add_bound("lapu:constant-u1", "Delta u1 = 0 balances the h-quadratic terms", lap,
                      tol("lapu:constant-u1", 1e-4));
    }
    return rep;
}

Report scan_conformal_suite(const RunConfig& cfg) {
    const TolTable tol{&cfg};
    const int n = cfg.samples > 0 ? cfg.samples : 100;
    Report rep;
    rep.suite = "scan-conformal";
    rep.seed = cfg.seed;

    const int pairs[3][2] = {{1, 1}, {1, 2}, {2, 3}};
    for (const auto& kl : pairs) {
        const int k = kl[0], l = kl[1];
        for (const double c : {cfg.c, cfg.c * 2.5}) {
            const GeneratingProfile prof = conformal_profile(k, l, c);
            Sampler rng(cfg.seed);
            double worst = 0.0;
            double monotone_violation = 0.0;
            double prev_s = -1.0, prev_a = -1.0;
            for (int i = 0; i < n; ++i) {
                const double s = rng.uniform(5 * kChartGuard, M_PI / 2 - 5 * kChartGuard);
                const GeneratingProfile::Eval2 e = prof.eval2(s);
                worst = std::max(worst, std::fabs(conformality_residual(k, l, e.a, e.as, s)));
                if (e.a < 0.0 || e.a > M_PI) monotone_violation = 1.0;
                if (prev_s >= 0.0 && ((s > prev_s && e.a < prev_a) || (s < prev_s && e.a > prev_a)))
                    monotone_violation = 1.0;
                prev_s = s;
                prev_a = e.a;
            }
            const std::string id =
                "k" + std::to_string(k) + "l" + std::to_string(l) + ":c" + format_double(c);
            rep.add_bound(id + ":ode", "a_s = sin a sqrt(k^2/sin^2 s + l^2/cos^2 s)", worst,
                          tol(id + ":ode", 1e-8));
            rep.add_bound(id + ":range", "a monotone into (0,pi)", monotone_violation, 0.5);
        }
    }
    return rep;
}

Report codazzi_check_suite(const RunConfig& cfg) {
    const TolTable tol{&cfg};
    const int n = cfg.samples > 0 ? cfg.samples : 20;
    Report rep;
    rep.suite = "codazzi-check";
    rep.seed = cfg.seed;

    const GeneratingProfile profile = perturbed_hopf_profile();
    Sampler rng(cfg.seed);
    double gauss_worst = 0.0, codazzi_worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const HopfChart3 c = random_chart(rng);
        const auto g = gauss_residuals(cfg.k, cfg.l, profile, c);
        for (double v : g) gauss_worst = std::max(gauss_worst, v);
        const int a = static_cast<int>(rng.raw() % 3);
        int b = static_cast<int>(rng.raw() % 3);
        if (b == a) b = (a + 1) % 3;
        const int cc = static_cast<int>(rng.raw() % 3);
        codazzi_worst = std::max(codazzi_worst, codazzi_residual(cfg.k, cfg.l, profile, c, a, b, cc));
    }
    rep.add_bound("gauss", "R - F*Rt = [A,A] on frame pairs", gauss_worst, tol("gauss", 1e-4));
    rep.add_bound("codazzi", "(nabla A) alternation = (Rt dF)^perp", codazzi_worst,
                  tol("codazzi", 1e-4));
    return rep;
}

} // namespace

bool suite_known(const std::string& name) {
    return name == "verify-structure" || name == "verify-bochner" || name == "hopf-invariants" ||
           name == "scan-conformal" || name == "codazzi-check" || name == "solve-ode";
}

Report run_suite(const RunConfig& cfg) {
    if (cfg.suite == "hopf-invariants") return hopf_invariants_suite(cfg);
    if (cfg.suite == "verify-structure") return verify_structure_suite(cfg);
    if (cfg.suite == "verify-bochner") return verify_bochner_suite(cfg);
    if (cfg.suite == "scan-conformal") return scan_conformal_suite(cfg);
    if (cfg.suite == "codazzi-check") return codazzi_check_suite(cfg);
    if (cfg.suite == "solve-ode") return run_solve_ode(cfg).report;
    fail(ErrorCode::InvalidArgument, "unknown suite: " + cfg.suite);
}

OdeRun run_solve_ode(const RunConfig& cfg) {
    const TolTable tol{&cfg};
    OdeRun out;
    out.report.suite = "solve-ode";
    out.report.seed = cfg.seed;

    ShootingConfig scfg;
    const BvpResult r = solve_bvp(cfg.k, cfg.l, scfg);
    out.aS0 = r.aS0;
    out.mismatch = r.mismatch;
    out.nonexistence = r.nonexistence;
    out.profile = r.profile;

    if (r.nonexistence) {
        const int kk = std::abs(cfg.k), ll = std::abs(cfg.l);
        const double analytic = r.nonexistence->at_left ? (1.0 - double(kk) * kk)
                                                        : (1.0 - double(ll) * ll);
        out.report.add("bvp:nonexistence-certificate", "endpoint obstruction forces k^2=l^2=1",
                       r.nonexistence->coefficient, analytic,
                       tol("bvp:nonexistence-certificate", 1e-6));
        return out;
    }

    out.report.add_bound("bvp:boundary-mismatch", "a(0)=0 and a(pi/2)=pi",
                         std::fabs(r.mismatch), tol("bvp:boundary-mismatch", 1e-8));

    double interior = 0.0;
    const GeneratingProfile& prof = *r.profile;
    for (std::size_t i = 0; i < prof.grid().size(); ++i) {
        const double s = prof.grid()[i];
        if (s < 1e-3 || s > M_PI / 2 - 1e-3) continue;
        const double ass = profile_node_ass(prof, i);
        interior = std::max(interior, std::fabs(minimality_residual(cfg.k, cfg.l, prof.values()[i],
                                                                    prof.derivs()[i], ass, s)));
    }
    out.report.add_bound("bvp:interior-residual", "generating-function equation", interior,
                         tol("bvp:interior-residual", 1e-8));
    out.report.add_bound("bvp:candidate", "profile respects the boundary data",
                         prof.is_solution_candidate(1e-6) ? 0.0 : 1.0, 0.5);
    return out;
}

std::string profile_csv(int k, int l, const GeneratingProfile& p) {
    std::string out = "s,a,a_s,residual\n";
    for (std::size_t i = 0; i < p.grid().size(); ++i) {
        const double s = p.grid()[i];
        double res = 0.0;
        if (s > 1e-9 && s < M_PI / 2 - 1e-9) {
            const GeneratingProfile::Eval2 e = p.eval2(s);
            res = minimality_residual(k, l, e.a, e.as, e.ass, s);
        }
        out += format_double(s) + "," + format_double(p.values()[i]) + "," +
               format_double(p.derivs()[i]) + "," + format_double(res) + "\n";
    }
    return out;
}

} // namespace mmk
