#include "charts.hpp"

#include <cmath>

#include "error.hpp"

namespace mmk {

namespace {

double wrap_angle(double t) {
    t = std::fmod(t, 2.0 * M_PI);
    if (t < 0) t += 2.0 * M_PI;
    return t;
}

void check_guard(double s, double guard) {
    if (std::sin(s) < guard || std::cos(s) < guard)
        fail(ErrorCode::ChartDegenerate, "chart parameter s outside the guard band");
}

} // namespace

SpherePoint chart_to_ambient(const HopfChart3& c) {
    const double ss = std::sin(c.s), cs = std::cos(c.s);
    return SpherePoint{{ss * std::cos(c.xi), ss * std::sin(c.xi), cs * std::cos(c.eta),
                        cs * std::sin(c.eta)},
                       1.0};
}

HopfChart3 ambient_to_chart3(const SpherePoint& p) {
    const double r1 = std::hypot(p.coords[0], p.coords[1]);
    const double r2 = std::hypot(p.coords[2], p.coords[3]);
    HopfChart3 c;
    c.s = std::atan2(r1, r2);
    c.xi = wrap_angle(std::atan2(p.coords[1], p.coords[0]));
    c.eta = wrap_angle(std::atan2(p.coords[3], p.coords[2]));
    return c;
}

SpherePoint chart_to_ambient(const PolarChart2& c) {
    const double sa = std::sin(c.a), ca = std::cos(c.a);
    return SpherePoint{
        {c.radius * sa * std::cos(c.sigma), c.radius * sa * std::sin(c.sigma), c.radius * ca},
        c.radius};
}

PolarChart2 ambient_to_chart2(const SpherePoint& p) {
    PolarChart2 c;
    c.radius = p.radius;
    const double r = std::hypot(p.coords[0], p.coords[1]);
    c.a = std::atan2(r, p.coords[2]);
    c.sigma = wrap_angle(std::atan2(p.coords[1], p.coords[0]));
    return c;
}

std::array<TangentVector, 3> s3_frame(const HopfChart3& c, double guard) {
    check_guard(c.s, guard);
    const SpherePoint p = chart_to_ambient(c);
    const double ss = std::sin(c.s), cs = std::cos(c.s);
    const Vec v1 = {-std::sin(c.xi), std::cos(c.xi), 0.0, 0.0};
    const Vec v2 = {0.0, 0.0, -std::sin(c.eta), std::cos(c.eta)};
    const Vec v3 = {cs * std::cos(c.xi), cs * std::sin(c.xi), -ss * std::cos(c.eta),
                    -ss * std::sin(c.eta)};
    return {TangentVector{p, v1}, TangentVector{p, v2}, TangentVector{p, v3}};
}

FrameConnectionTable s3_connection(const HopfChart3& c, double guard) {
    check_guard(c.s, guard);
    const double cot_s = std::cos(c.s) / std::sin(c.s);
    const double tan_s = std::sin(c.s) / std::cos(c.s);
    FrameConnectionTable t;
    t.coefficients[0][0][2] = -cot_s;
    t.coefficients[0][2][0] = cot_s;
    t.coefficients[1][1][2] = tan_s;
    t.coefficients[1][2][1] = -tan_s;
    return t;
}

GreatCircleJet great_circle_jet(const MapUnderTest& f, const SpherePoint& p, const Vec& v,
                                const JetOptions& opt) {
    const int sd = f.source_ambient_dim();
    const int td = f.target_ambient_dim();
    if (p.ambient_dim() != sd || static_cast<int>(v.size()) != sd)
        fail(ErrorCode::InvalidArgument, "great_circle_jet: dimension mismatch");

    GreatCircleJet out;
    out.first.resize(td);
    out.second.resize(td);

    if (opt.backend == JetBackend::Taylor) {
        std::vector<Jet2> in(sd), res(td);
        for (int i = 0; i < sd; ++i) in[i] = Jet2(p.coords[i], v[i], -p.coords[i]);
        f.eval(std::span<const Jet2>(in), std::span<Jet2>(res));
        for (int i = 0; i < td; ++i) {
            out.first[i] = res[i].d1;
            out.second[i] = res[i].d2;
        }
        return out;
    }

    // finite differences with one Richardson step; h and h/2 estimates must
    // agree or the evaluation is reported as broken down
    const auto at = [&](double t) {
        Vec in(sd), res(td);
        const double c = std::cos(t), s = std::sin(t);
        for (int i = 0; i < sd; ++i) in[i] = c * p.coords[i] + s * v[i];
        f.eval(std::span<const double>(in), std::span<double>(res));
        return res;
    };
    const double h = opt.fd_step;
    const Vec fp = at(h), fm = at(-h), fp2 = at(h / 2), fm2 = at(-h / 2), f0 = at(0.0);
    for (int i = 0; i < td; ++i) {
        const double d1h = (fp[i] - fm[i]) / (2.0 * h);
        const double d1h2 = (fp2[i] - fm2[i]) / h;
        const double d1 = (4.0 * d1h2 - d1h) / 3.0;
        const double d2h = (fp[i] - 2.0 * f0[i] + fm[i]) / (h * h);
        const double d2h2 = (fp2[i] - 2.0 * f0[i] + fm2[i]) / (h * h / 4.0);
        const double d2 = (4.0 * d2h2 - d2h) / 3.0;
        if (std::fabs(d1 - d1h2) > opt.breakdown_tol * std::max(1.0, std::fabs(d1)) ||
            std::fabs(d2 - d2h2) > 30.0 * opt.breakdown_tol * std::max(1.0, std::fabs(d2)))
            fail(ErrorCode::NumericalBreakdown, "finite-difference jet estimates disagree");
        out.first[i] = d1;
        out.second[i] = d2;
    }
    return out;
}

Vec push_forward(const MapUnderTest& f, const SpherePoint& p, const Vec& v,
                 const JetOptions& opt) {
    const double n = norm(v);
    if (n == 0.0) return Vec(f.target_ambient_dim(), 0.0);
    const GreatCircleJet j = great_circle_jet(f, p, scaled(v, 1.0 / n), opt);
    return scaled(j.first, n);
}

} // namespace mmk
