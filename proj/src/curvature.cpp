#include "curvature.hpp"

#include <cmath>

#include "error.hpp"

namespace mmk {

namespace {

double sq(double x) { return x * x; }

std::array<std::array<double, 3>, 3> invert3(const std::array<std::array<double, 3>, 3>& m) {
    const double d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (std::fabs(d) < 1e-300) fail(ErrorCode::NumericalBreakdown, "singular chart metric");
    std::array<std::array<double, 3>, 3> inv;
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return inv;
}

} // namespace

std::array<std::array<double, 3>, 3> EquivariantChartMetric::g(double s) const {
    const double ss = std::sin(s), cs = std::cos(s);
    std::array<std::array<double, 3>, 3> m{};
    m[0][0] = ss * ss;
    m[1][1] = cs * cs;
    m[2][2] = 1.0;
    if (!pure_sphere) {
        const GeneratingProfile::Eval2 e = profile->eval2(s);
        const double sa2 = sq(std::sin(e.a));
        m[0][0] += k * k * sa2;
        m[1][1] += l * l * sa2;
        m[0][1] = m[1][0] = k * l * sa2;
        m[2][2] += e.as * e.as;
    }
    return m;
}

std::array<std::array<double, 3>, 3> EquivariantChartMetric::dg(double s) const {
    const double ss = std::sin(s), cs = std::cos(s);
    std::array<std::array<double, 3>, 3> m{};
    m[0][0] = 2.0 * ss * cs;
    m[1][1] = -2.0 * ss * cs;
    m[2][2] = 0.0;
    if (!pure_sphere) {
        const GeneratingProfile::Eval2 e = profile->eval2(s);
        const double dsa2 = 2.0 * std::sin(e.a) * std::cos(e.a) * e.as;
        m[0][0] += k * k * dsa2;
        m[1][1] += l * l * dsa2;
        m[0][1] = m[1][0] = k * l * dsa2;
        m[2][2] += 2.0 * e.as * e.ass;
    }
    return m;
}

Christoffel christoffel(const EquivariantChartMetric& m, double s) {
    const auto g = m.g(s);
    const auto dg = m.dg(s);
    const auto gi = invert3(g);
    Christoffel G{};
    // only d/ds (index 2) derivatives are nonzero
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 3; ++l) {
                    double t = 0.0;
                    if (i == 2) t += dg[j][l];
                    if (j == 2) t += dg[i][l];
                    if (l == 2) t -= dg[i][j];
                    sum += gi[k][l] * t;
                }
                G[k][i][j] = 0.5 * sum;
            }
    return G;
}

ChartCurvature chart_curvature(const EquivariantChartMetric& m, double s) {
    const double h = 1e-5;
    const Christoffel G = christoffel(m, s);
    const Christoffel Gp = christoffel(m, s + h);
    const Christoffel Gm = christoffel(m, s - h);
    Christoffel dG{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) dG[k][i][j] = (Gp[k][i][j] - Gm[k][i][j]) / (2.0 * h);

    // curvature operator R(d_i, d_j) d_k = Rop[l][i][j][k] d_l
    double Rop[3][3][3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double v = 0.0;
                    if (i == 2) v += dG[l][j][k];
                    if (j == 2) v -= dG[l][i][k];
                    for (int mm = 0; mm < 3; ++mm)
                        v += G[mm][j][k] * G[l][i][mm] - G[mm][i][k] * G[l][j][mm];
                    Rop[l][i][j][k] = v;
                }

    ChartCurvature out;
    out.metric = m.g(s);
    // Gauss-equation normalization: R(X,Y,Z,W) = < R(X,Y) W, Z >
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double v = 0.0;
                    for (int mm = 0; mm < 3; ++mm) v += Rop[mm][i][j][l] * out.metric[mm][k];
                    out.R[i][j][k][l] = v;
                }
    return out;
}

double sphere_curvature(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W, double radius) {
    return (dot(X, Z) * dot(Y, W) - dot(X, W) * dot(Y, Z)) / (radius * radius);
}

namespace {

// chart components of an ambient tangent vector at a chart point
std::array<double, 3> chart_components(const HopfChart3& c, const Vec& u) {
    const auto frame = s3_frame(c);
    return {dot(u, frame[0].vec) / std::sin(c.s), dot(u, frame[1].vec) / std::cos(c.s),
            dot(u, frame[2].vec)};
}

double contract(const ChartCurvature& R, const std::array<double, 3>& a,
                const std::array<double, 3>& b, const std::array<double, 3>& c,
                const std::array<double, 3>& d) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) v += R.R[i][j][k][l] * a[i] * b[j] * c[k] * d[l];
    return v;
}

} // namespace

std::array<double, 3> gauss_residuals(int k, int l, const GeneratingProfile& profile,
                                      const HopfChart3& c) {
    const MapUnderTest f = MapUnderTest::equivariant(k, l, profile);
    const SpherePoint p = chart_to_ambient(c);
    const SingularData sd = singular_decompose(f, p);
    const HessianComponents bc = hessian_B(f, p, sd);

    const double n2[3] = {1.0, 1.0 + sq(sd.lambda), 1.0 + sq(sd.mu)};
    ProductVector A[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            A[i][j] = apply_A(sd.raw, sd.alpha[i].vec, sd.alpha[j].vec, bc.B[i][j]);
            const double nf = std::sqrt(n2[i] * n2[j]);
            A[i][j].m_part = scaled(A[i][j].m_part, 1.0 / nf);
            A[i][j].n_part = scaled(A[i][j].n_part, 1.0 / nf);
        }

    const EquivariantChartMetric metric{k, l, &profile, false};
    const ChartCurvature R = chart_curvature(metric, c.s);

    std::array<double, 3> out{};
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int t = 0; t < 3; ++t) {
        const int i = pairs[t][0], j = pairs[t][1];
        const auto ei = chart_components(c, sd.e[i].vec);
        const auto ej = chart_components(c, sd.e[j].vec);
        const double lhs_graph = contract(R, ei, ej, ei, ej);

        const Vec dfei = sd.raw.df(sd.e[i].vec);
        const Vec dfej = sd.raw.df(sd.e[j].vec);
        const double lhs_ambient =
            sphere_curvature(sd.e[i].vec, sd.e[j].vec, sd.e[i].vec, sd.e[j].vec, 1.0) +
            sphere_curvature(dfei, dfej, dfei, dfej, f.target_radius());

        const double rhs = A[i][i].inner(A[j][j]) - A[i][j].inner(A[i][j]);
        out[t] = std::fabs(lhs_graph - lhs_ambient - rhs);
    }
    return out;
}

namespace {

// second fundamental form on the coordinate fields at a chart point
struct CoordA {
    ProductVector A[3][3];
    SpherePoint p;
    SpherePoint q;
};

CoordA coordinate_A(const MapUnderTest& f, const HopfChart3& c) {
    const SpherePoint p = chart_to_ambient(c);
    const SingularData sd = singular_decompose(f, p);
    const HessianComponents bc = hessian_B(f, p, sd);
    ProductVector Aa[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            Aa[i][j] = apply_A(sd.raw, sd.alpha[i].vec, sd.alpha[j].vec, bc.B[i][j]);

    const auto frame = s3_frame(c);
    const Vec coord[3] = {scaled(frame[0].vec, std::sin(c.s)), scaled(frame[1].vec, std::cos(c.s)),
                          frame[2].vec};
    CoordA out;
    out.p = p;
    out.q = sd.q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            ProductVector acc;
            acc.m_part.assign(4, 0.0);
            acc.n_part.assign(3, 0.0);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    const double w = dot(coord[i], sd.alpha[a].vec) * dot(coord[j], sd.alpha[b].vec);
                    if (w != 0.0) acc.add_scaled(w, Aa[a][b]);
                }
            out.A[i][j] = acc;
        }
    return out;
}

} // namespace

double codazzi_residual(int k, int l, const GeneratingProfile& profile, const HopfChart3& c,
                        int a, int b, int cc) {
    const MapUnderTest f = MapUnderTest::equivariant(k, l, profile);
    const SpherePoint p = chart_to_ambient(c);
    const SingularData sd = singular_decompose(f, p);

    const auto frame = s3_frame(c);
    const Vec coord[3] = {scaled(frame[0].vec, std::sin(c.s)), scaled(frame[1].vec, std::cos(c.s)),
                          frame[2].vec};

    const EquivariantChartMetric metric{k, l, &profile, false};
    const Christoffel G = christoffel(metric, c.s);
    const CoordA center = coordinate_A(f, c);

    // derivative of the field A(d_i, d_j) along the coordinate direction d_x
    const double h = 1e-5;
    const auto dA = [&](int x, int i, int j) {
        const auto shifted = [&](double t) {
            HopfChart3 cs = c;
            if (x == 0) cs.xi += t;
            if (x == 1) cs.eta += t;
            if (x == 2) cs.s += t;
            return coordinate_A(f, cs).A[i][j];
        };
        const ProductVector Ap = shifted(h), Am = shifted(-h);
        ProductVector d;
        d.m_part.resize(4);
        d.n_part.resize(3);
        for (int t = 0; t < 4; ++t) d.m_part[t] = (Ap.m_part[t] - Am.m_part[t]) / (2 * h);
        for (int t = 0; t < 3; ++t) d.n_part[t] = (Ap.n_part[t] - Am.n_part[t]) / (2 * h);
        return d;
    };

    // graph tangent frame in the product, for the normal projection
    const double n2[3] = {1.0, 1.0 + sq(sd.lambda), 1.0 + sq(sd.mu)};
    ProductVector tangent[3];
    for (int i = 0; i < 3; ++i) {
        tangent[i].m_part = sd.e[i].vec;
        tangent[i].n_part = scaled(sd.raw.df(sd.alpha[i].vec), 1.0 / std::sqrt(n2[i]));
    }

    const auto normal_project = [&](ProductVector w) {
        // to the product tangent space first
        axpy(w.m_part, -dot(w.m_part, center.p.coords), center.p.coords);
        const double r2 = dot(center.q.coords, center.q.coords);
        axpy(w.n_part, -dot(w.n_part, center.q.coords) / r2, center.q.coords);
        for (int i = 0; i < 3; ++i) w.add_scaled(-w.inner(tangent[i]), tangent[i]);
        return w;
    };

    // (nabla_perp_X A)(Y, Z) with X = d_a, Y = d_b, Z = d_cc
    const auto cov_perp = [&](int x, int i, int j) {
        ProductVector w = normal_project(dA(x, i, j));
        for (int mm = 0; mm < 3; ++mm) {
            w.add_scaled(-G[mm][x][i], center.A[mm][j]);
            w.add_scaled(-G[mm][x][j], center.A[i][mm]);
        }
        // re-project: A-values are normal already, the Gamma terms are too
        return w;
    };

    ProductVector lhs = cov_perp(a, b, cc);
    const ProductVector alt = cov_perp(b, a, cc);
    lhs.add_scaled(-1.0, alt);
    lhs = normal_project(lhs);

    // Rt(dF X, dF Y) dF Z: on a round factor of radius r the curvature
    // operator applied to the triple is (<Y,Z> X - <X,Z> Y)/r^2
    const Vec dfc[3] = {sd.raw.df(coord[0]), sd.raw.df(coord[1]), sd.raw.df(coord[2])};
    ProductVector rhs;
    const auto curv_vec = [](const Vec& X, const Vec& Y, const Vec& Z, double r) {
        Vec v = scaled(X, dot(Y, Z));
        axpy(v, -dot(X, Z), Y);
        return scaled(v, 1.0 / (r * r));
    };
    rhs.m_part = curv_vec(coord[a], coord[b], coord[cc], 1.0);
    rhs.n_part = curv_vec(dfc[a], dfc[b], dfc[cc], f.target_radius());
    rhs = normal_project(rhs);

    lhs.add_scaled(-1.0, rhs);
    return lhs.norm();
}

} // namespace mmk
