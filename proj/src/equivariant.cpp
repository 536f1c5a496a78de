#include "equivariant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "error.hpp"

namespace mmk {

namespace {

double sq(double x) { return x * x; }

// P = l^2 sin^2 s + k^2 cos^2 s (the frame normalizer of the eigenbasis)
double frame_norm2(int k, int l, double s) {
    return sq(l * std::sin(s)) + sq(k * std::cos(s));
}

} // namespace

EquivariantSingularValues equivariant_singular_values(int k, int l, double a, double a_s,
                                                      double s) {
    if (s <= 0.0 || s >= M_PI / 2)
        fail(ErrorCode::ChartDegenerate, "singular values need s inside (0, pi/2)");
    EquivariantSingularValues out;
    const double sa = std::sin(a);
    out.lambda1 = 0.0;
    out.lambda2 = std::sqrt(sq(k * sa / std::sin(s)) + sq(l * sa / std::cos(s)));
    out.lambda3 = std::fabs(a_s);
    const double n = std::sqrt(frame_norm2(k, l, s));
    out.alpha1 = {l * std::sin(s) / n, -k * std::cos(s) / n, 0.0};
    out.alpha2 = {k * std::cos(s) / n, l * std::sin(s) / n, 0.0};
    out.alpha3 = {0.0, 0.0, 1.0};
    return out;
}

double conformal_profile_value(int k, int l, double c, double s) {
    if (c <= 0.0 || k < 1 || l < k)
        fail(ErrorCode::InvalidArgument, "conformal profile needs c > 0 and 1 <= k <= l");
    if (s <= 0.0) return 0.0;
    if (s >= M_PI / 2) return M_PI;
    if (l == k) return 2.0 * std::atan(c * std::pow(std::tan(s), k));
    // Separation of variables of the conformality equation gives
    //   tan(a/2) = c ((u-k)/(u+k))^{k/2} ((l+u)/(l-u))^{l/2},
    //   u = sqrt(k^2 cos^2 s + l^2 sin^2 s),
    // written below with (u-k) and (l-u) rationalized so both endpoints are
    // evaluated without cancellation.
    const double d2 = static_cast<double>(l) * l - static_cast<double>(k) * k;
    const double ss = std::sin(s), cs = std::cos(s);
    const double u = std::sqrt(k * k * cs * cs + static_cast<double>(l) * l * ss * ss);
    const double g = std::pow(d2, 0.5 * (k - l)) * std::pow(ss, k) * std::pow(cs, -l) *
                     std::pow(u + k, -k) * std::pow(l + u, l);
    return 2.0 * std::atan(c * g);
}

GeneratingProfile conformal_profile(int k, int l, double c) {
    auto fa = [k, l, c](double s) { return conformal_profile_value(k, l, c, s); };
    auto fas = [fa](double s) {
        const double h = std::min(1e-5, 0.25 * std::min(s, M_PI / 2 - s) + 1e-9);
        const auto d = [&](double step) { return (fa(s + step) - fa(s - step)) / (2.0 * step); };
        return (4.0 * d(h / 2) - d(h)) / 3.0;
    };
    auto fass = [fa](double s) {
        const double h = std::min(1e-4, 0.25 * std::min(s, M_PI / 2 - s) + 1e-9);
        const auto d = [&](double step) {
            return (fa(s + step) - 2.0 * fa(s) + fa(s - step)) / (step * step);
        };
        return (4.0 * d(h / 2) - d(h)) / 3.0;
    };
    return GeneratingProfile::analytic(fa, fas, fass);
}

double minimality_residual(int k, int l, double a, double a_s, double a_ss, double s) {
    const double ss = std::sin(s), cs = std::cos(s);
    const double sa = std::sin(a), ca = std::cos(a);
    const double P = frame_norm2(k, l, s);
    const double D = sq(ss * cs) + sq(sa) * P;
    if (D < 1e-14) fail(ErrorCode::DenominatorUnderflow, "equation denominator underflow");
    const double N = cs * ss * (std::cos(2 * s) + (l * l - k * k) * sq(sa)) * a_s - sa * ca * P;
    return a_ss / (1.0 + a_s * a_s) + N / D;
}

double conformality_residual(int k, int l, double a, double a_s, double s) {
    return a_s - std::sin(a) * std::sqrt(sq(k / std::sin(s)) + sq(l / std::cos(s)));
}

EquivariantH equivariant_h_components(int k, int l, const GeneratingProfile& profile, double s) {
    if (s <= 0.0 || s >= M_PI / 2)
        fail(ErrorCode::ChartDegenerate, "h components need s inside (0, pi/2)");
    const GeneratingProfile::Eval2 ev = profile.eval2(s);
    if (!(ev.as > 0.0))
        fail(ErrorCode::InvalidArgument, "h components require a_s > 0");
    const double a = ev.a, as = ev.as, ass = ev.ass;
    const double ss = std::sin(s), cs = std::cos(s);
    const double sa = std::sin(a), ca = std::cos(a);
    const double P = frame_norm2(k, l, s);
    const double D = sq(ss * cs) + sq(sa) * P;
    const EquivariantSingularValues sv = equivariant_singular_values(k, l, a, as, s);
    const double w2 = 1.0 + sq(sv.lambda2), w3 = 1.0 + sq(sv.lambda3);

    EquivariantH out;
    out.h[0][0][2] = out.h[0][2][0] = -k * l * sv.lambda2 / (P * std::sqrt(w2 * w3));
    out.h[0][1][2] = out.h[0][2][1] =
        (as * ca * ss * cs * P + sa * (sq(l * ss * ss) - sq(k * cs * cs))) /
        (std::sqrt(P) * D * std::sqrt(w3));
    out.h[1][0][0] = as * (l * l - k * k) * cs * ss / (std::sqrt(w3) * P);
    out.h[1][0][1] = out.h[1][1][0] = k * l * as / (std::sqrt(w2 * (1.0 + as * as)) * P);
    out.h[1][2][2] = ass / ((1.0 + as * as) * std::sqrt(w3));
    out.h[1][1][1] =
        (as * ss * cs * (sq(k * cs * cs) - sq(l * ss * ss)) - sa * ca * P * P) /
        (std::sqrt(w3) * P * D);
    return out;
}

EndpointCoefficients endpoint_analysis(int k, int l, double aS0) {
    if (aS0 <= 0.0) fail(ErrorCode::InvalidArgument, "endpoint analysis needs a positive slope");
    const auto numerator_slope = [aS0](int kk, int ll) {
        // N(s)/s with a = aS0 s, extrapolated to s -> 0
        const auto c = [&](double s) {
            const double a = aS0 * s;
            const double N = std::cos(s) * std::sin(s) *
                                 (std::cos(2 * s) + (ll * ll - kk * kk) * sq(std::sin(a))) * aS0 -
                             std::sin(a) * std::cos(a) * frame_norm2(kk, ll, s);
            return N / s;
        };
        const double eps = 1e-3;
        return (4.0 * c(eps / 2) - c(eps)) / 3.0;
    };
    EndpointCoefficients out;
    out.left = numerator_slope(k, l);
    out.right = numerator_slope(l, k); // mirrored problem swaps k and l
    return out;
}

namespace {

struct OdeState {
    double a;
    double as;
};

struct OdeRhs {
    int k, l;
    OdeState operator()(double s, const OdeState& y) const {
        const double ss = std::sin(s), cs = std::cos(s);
        const double sa = std::sin(y.a), ca = std::cos(y.a);
        const double P = sq(l * ss) + sq(k * cs);
        const double D = sq(ss * cs) + sq(sa) * P;
        const double N = cs * ss * (std::cos(2 * s) + (l * l - k * k) * sq(sa)) * y.as - sa * ca * P;
        return {y.as, -(1.0 + y.as * y.as) * N / D};
    }
};

// Dormand-Prince 5(4) with standard step control. Calls `observe`
// after every accepted step. Integration from s0 to s1 (s0 < s1).
template <class Obs>
OdeState integrate(const OdeRhs& rhs, double s0, double s1, OdeState y, double rtol, double atol,
                   Obs&& observe, double max_step = 0.0) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const auto lin = [](const OdeState& y0, std::initializer_list<std::pair<double, const OdeState*>> terms,
                        double h) {
        OdeState r = y0;
        for (const auto& [c, k] : terms) {
            r.a += h * c * k->a;
            r.as += h * c * k->as;
        }
        return r;
    };

    double s = s0;
    double h = std::min(1e-3, (s1 - s0) / 10);
    if (max_step > 0.0) h = std::min(h, max_step);
    OdeState k1 = rhs(s, y);
    int rejected_in_row = 0;
    while (s < s1) {
        if (s + h > s1) h = s1 - s;
        const OdeState k2 = rhs(s + c2 * h, lin(y, {{a21, &k1}}, h));
        const OdeState k3 = rhs(s + c3 * h, lin(y, {{a31, &k1}, {a32, &k2}}, h));
        const OdeState k4 = rhs(s + c4 * h, lin(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
        const OdeState k5 =
            rhs(s + c5 * h, lin(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
        const OdeState k6 =
            rhs(s + h, lin(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
        const OdeState ynew =
            lin(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
        const OdeState k7 = rhs(s + h, ynew);

        const double err_a =
            h * (e1 * k1.a + e3 * k3.a + e4 * k4.a + e5 * k5.a + e6 * k6.a + e7 * k7.a);
        const double err_as =
            h * (e1 * k1.as + e3 * k3.as + e4 * k4.as + e5 * k5.as + e6 * k6.as + e7 * k7.as);
        const double sc_a = atol + rtol * std::max(std::fabs(y.a), std::fabs(ynew.a));
        const double sc_as = atol + rtol * std::max(std::fabs(y.as), std::fabs(ynew.as));
        const double err = std::sqrt(0.5 * (sq(err_a / sc_a) + sq(err_as / sc_as)));

        if (err <= 1.0) {
            s += h;
            y = ynew;
            k1 = k7;
            rejected_in_row = 0;
            observe(s, y);
            if (y.a < -0.1 || y.a > M_PI + 0.1 || std::fabs(y.as) > 1e6)
                fail(ErrorCode::BlowUp, "generating function left the admissible band");
        } else {
            ++rejected_in_row;
            if (rejected_in_row > 60) fail(ErrorCode::Stiffness, "step control cannot proceed");
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (max_step > 0.0) h = std::min(h, max_step);
        if (h < 1e-14) fail(ErrorCode::Stiffness, "step size underflow");
    }
    return y;
}

} // namespace

double frobenius_cubic_coefficient(int k, int l, double c1) {
    const auto residual = [&](double c3, double s) {
        return minimality_residual(k, l, c1 * s + c3 * s * s * s, c1 + 3 * c3 * s * s, 6 * c3 * s,
                                   s);
    };
    const auto root_at = [&](double s) {
        double x0 = 0.0, x1 = 1.0;
        double f0 = residual(x0, s), f1 = residual(x1, s);
        for (int it = 0; it < 60 && std::fabs(f1) > 1e-16; ++it) {
            const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = residual(x1, s);
        }
        return x1;
    };
    // two Richardson levels: the collocation roots carry even-power errors
    const double eps = 4e-3;
    const double c0 = root_at(eps), c1 = root_at(eps / 2), c2 = root_at(eps / 4);
    const double r1 = (4.0 * c1 - c0) / 3.0;
    const double r2 = (4.0 * c2 - c1) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

ShootResult shoot(int k, int l, double aS0, const ShootingConfig& cfg) {
    k = std::abs(k);
    l = std::abs(l);
    if (k == 0 || l == 0) fail(ErrorCode::InvalidArgument, "shoot requires k*l != 0");
    if (aS0 <= 0.0) fail(ErrorCode::InvalidArgument, "shoot requires a positive initial slope");
    if (k != 1)
        fail(ErrorCode::EndpointSingular,
             "endpoint analysis: no C^2 seed at s=0 unless k^2 = 1");

    const double eps = cfg.start_offset;
    const double c3 = frobenius_cubic_coefficient(k, l, aS0);
    const OdeRhs rhs{k, l};
    const double send = M_PI / 2 - eps;
    const OdeState seed{aS0 * eps + c3 * eps * eps * eps, aS0 + 3 * c3 * eps * eps};

    // single adaptive pass for the boundary mismatch (forced grid stepping
    // below would accumulate per-segment roundoff into the measurement)
    const OdeState yend =
        integrate(rhs, eps, send, seed, cfg.rel_tol, cfg.abs_tol, [](double, const OdeState&) {});

    // mirrored series at pi/2 (the mirrored problem swaps k and l)
    const double b1 = yend.as;
    const double b3 = (l == 1) ? frobenius_cubic_coefficient(l, k, b1) : 0.0;
    const double predicted = M_PI - b1 * eps - b3 * eps * eps * eps;
    const double mismatch = yend.a - predicted;

    // second pass through the Chebyshev grid so the stored profile carries
    // step-exact values at the knots
    const std::vector<double> grid = GeneratingProfile::standard_grid();
    std::vector<double> values(grid.size()), derivs(grid.size());
    OdeState y = seed;
    double scur = eps;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double sg = grid[i];
        if (sg <= eps) {
            values[i] = aS0 * sg + c3 * sg * sg * sg;
            derivs[i] = aS0 + 3 * c3 * sg * sg;
            continue;
        }
        if (sg >= send) break;
        y = integrate(rhs, scur, sg, y, cfg.rel_tol, cfg.abs_tol, [](double, const OdeState&) {});
        scur = sg;
        values[i] = y.a;
        derivs[i] = y.as;
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double sg = grid[i];
        if (sg < send) continue;
        const double sigma = M_PI / 2 - sg;
        values[i] = M_PI - (b1 * sigma + b3 * sigma * sigma * sigma);
        derivs[i] = b1 + 3 * b3 * sigma * sigma;
    }

    ShootResult out;
    out.profile = GeneratingProfile::sampled(grid, std::move(values), std::move(derivs), aS0, b1);
    out.mismatch = mismatch;
    out.aS0 = aS0;
    return out;
}

BvpResult solve_bvp(int k, int l, const ShootingConfig& cfg) {
    k = std::abs(k);
    l = std::abs(l);
    if (k == 0 || l == 0) fail(ErrorCode::InvalidArgument, "solve_bvp requires k*l != 0");

    BvpResult out;
    if (k != 1 || l != 1) {
        const EndpointCoefficients co = endpoint_analysis(k, l, 1.0);
        out.nonexistence = BvpNonexistence{k != 1 ? co.left : co.right, k != 1};
        return out;
    }

    // For k = l the equation is invariant under s -> pi/2 - s, a -> pi - a,
    // and the boundary data admits the one-parameter family of weakly
    // conformal profiles (the dilation orbit of the fibration profile).
    // The solve therefore shoots from both endpoints with a COMMON slope
    // and matches the values at cfg.match_point: the unique root is the
    // symmetric member, which is the fibration profile itself.
    const double eps = cfg.start_offset;
    const double s_match = std::clamp(cfg.match_point, 4 * eps, M_PI / 2 - 4 * eps);
    const OdeRhs rhs{k, l};
    const OdeRhs rhs_mirror{l, k};

    const auto value_gap = [&](double c) {
        const double c3 = frobenius_cubic_coefficient(k, l, c);
        OdeState yl{c * eps + c3 * eps * eps * eps, c + 3 * c3 * eps * eps};
        yl = integrate(rhs, eps, s_match, yl, cfg.rel_tol, cfg.abs_tol,
                       [](double, const OdeState&) {});
        const double d3 = frobenius_cubic_coefficient(l, k, c);
        OdeState yr{c * eps + d3 * eps * eps * eps, c + 3 * d3 * eps * eps};
        yr = integrate(rhs_mirror, eps, M_PI / 2 - s_match, yr, cfg.rel_tol, cfg.abs_tol,
                       [](double, const OdeState&) {});
        return yl.a - (M_PI - yr.a);
    };

    // bracket the slope on [0.1, 20]
    const int nscan = 24;
    double c_lo = 0.0, c_hi = 0.0, f_lo = 0.0, f_hi = 0.0;
    bool bracketed = false;
    double prev_c = 0.0, prev_f = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= nscan && !bracketed; ++i) {
        const double c = 0.1 + (20.0 - 0.1) * i / nscan;
        double fc;
        try {
            fc = value_gap(c);
        } catch (const Error&) {
            have_prev = false;
            continue;
        }
        if (have_prev && prev_f * fc <= 0.0) {
            c_lo = prev_c;
            c_hi = c;
            f_lo = prev_f;
            f_hi = fc;
            bracketed = true;
        }
        prev_c = c;
        prev_f = fc;
        have_prev = true;
    }
    if (!bracketed) fail(ErrorCode::NoBracket, "value gap does not change sign on [0.1, 20]");

    // secant with a bisection guard
    double croot = 0.5 * (c_lo + c_hi);
    double f0 = f_lo, f1 = f_hi, x0 = c_lo, x1 = c_hi;
    for (int it = 0; it < 80; ++it) {
        double cn;
        if (std::fabs(f1 - f0) > 1e-300) {
            cn = x1 - f1 * (x1 - x0) / (f1 - f0);
            if (!(cn > c_lo && cn < c_hi)) cn = 0.5 * (c_lo + c_hi);
        } else {
            cn = 0.5 * (c_lo + c_hi);
        }
        const double fn = value_gap(cn);
        if (f_lo * fn <= 0.0) {
            c_hi = cn;
            f_hi = fn;
        } else {
            c_lo = cn;
            f_lo = fn;
        }
        x0 = x1;
        f0 = f1;
        x1 = cn;
        f1 = fn;
        croot = cn;
        if (std::fabs(fn) < cfg.secant_tol && c_hi - c_lo < 1e-12) break;
    }

    const ShootResult full = shoot(k, l, croot, cfg);
    out.profile = full.profile;
    out.aS0 = croot;
    out.mismatch = full.mismatch;
    return out;
}

} // namespace mmk
