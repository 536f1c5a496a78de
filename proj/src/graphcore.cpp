#include "graphcore.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mmk {

Vec GraphData::df(const Vec& u) const {
    Vec out(q.ambient_dim(), 0.0);
    for (int i = 0; i < m(); ++i) {
        const double c = dot(u, alpha[i]);
        if (c != 0.0) axpy(out, c, df_alpha[i]);
    }
    return out;
}

GraphData decompose_graph(const MapUnderTest& f, const SpherePoint& p,
                          const DecomposeOptions& opt) {
    const std::vector<Vec> basis = tangent_basis(p);
    const int m = static_cast<int>(basis.size());

    std::vector<Vec> J(m);
    for (int i = 0; i < m; ++i) J[i] = great_circle_jet(f, p, basis[i], opt.jets).first;

    std::vector<Vec> G(m, Vec(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) G[i][j] = G[j][i] = dot(J[i], J[j]);

    const EigenSym eig = jacobi_eigen(G);

    GraphData data;
    data.p = p;
    data.q = f.apply(p);
    data.sigma.resize(m);
    data.alpha.resize(m);
    data.df_alpha.resize(m);
    data.beta.resize(m);
    for (int k = 0; k < m; ++k) {
        Vec a(p.ambient_dim(), 0.0);
        Vec dfa(f.target_ambient_dim(), 0.0);
        for (int i = 0; i < m; ++i) {
            axpy(a, eig.vecs[k][i], basis[i]);
            axpy(dfa, eig.vecs[k][i], J[i]);
        }
        data.alpha[k] = a;
        data.df_alpha[k] = dfa;
        // |df alpha| rather than sqrt(eigenvalue): the eigenvalue of a kernel
        // direction carries O(eps ||G||) noise whose square root would
        // dominate the singular value
        data.sigma[k] = norm(dfa);
        if (data.sigma[k] > opt.rank_tol) data.beta[k] = scaled(dfa, 1.0 / data.sigma[k]);
    }
    if (data.sigma.back() < opt.rank_tol)
        fail(ErrorCode::RankDeficient, "map is locally constant: all singular values vanish");
    return data;
}

namespace {

// flip v so that its largest-magnitude component is positive
void canonical_sign(Vec& v, Vec* coupled = nullptr) {
    int arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::fabs(v[i]) > std::fabs(v[arg])) arg = static_cast<int>(i);
    if (v[arg] < 0.0) {
        for (double& x : v) x = -x;
        if (coupled)
            for (double& x : *coupled) x = -x;
    }
}

} // namespace

SingularData singular_decompose(const MapUnderTest& f, const SpherePoint& p,
                                const DecomposeOptions& opt) {
    if (f.source_ambient_dim() != 4)
        fail(ErrorCode::InvalidArgument, "singular_decompose expects an S^3 source");
    GraphData raw = decompose_graph(f, p, opt);
    if (raw.sigma[0] * raw.sigma[0] > opt.kernel_tol)
        fail(ErrorCode::InvalidArgument,
             "smallest eigenvalue exceeds the kernel tolerance: not a submersion with kernel");
    if (raw.sigma[1] < opt.rank_tol)
        fail(ErrorCode::RankDeficient, "rank of df below 2");

    SingularData d;
    d.p = raw.p;
    d.q = raw.q;
    d.lambda = raw.sigma[1];
    d.mu = raw.sigma[2];
    d.near_conformal = (d.mu - d.lambda) < opt.conformal_tol;

    Vec a1 = raw.alpha[0], a2 = raw.alpha[1], a3 = raw.alpha[2];

    if (d.near_conformal) {
        // deterministic frame in the degenerate eigenplane: project a fixed
        // ambient axis into span{a2, a3}
        Vec na2;
        for (int axis = opt.tie_axis; axis < opt.tie_axis + 4; ++axis) {
            Vec ax(4, 0.0);
            ax[axis % 4] = 1.0;
            Vec proj(4, 0.0);
            axpy(proj, dot(ax, a2), a2);
            axpy(proj, dot(ax, a3), a3);
            if (norm(proj) >= 1e-6) {
                na2 = normalized(proj);
                break;
            }
        }
        if (na2.empty()) fail(ErrorCode::NumericalBreakdown, "tie-break projection degenerate");
        Vec na3 = a3;
        axpy(na3, -dot(na3, na2), na2);
        if (norm(na3) < 1e-6) {
            na3 = a2;
            axpy(na3, -dot(na3, na2), na2);
        }
        na3 = normalized(na3);
        a2 = na2;
        a3 = na3;
    }

    canonical_sign(a2);
    canonical_sign(a3);

    if (opt.align) {
        const auto flip_to = [](Vec& v, const Vec& ref) {
            if (dot(v, ref) < 0.0)
                for (double& x : v) x = -x;
        };
        flip_to(a1, opt.align->alpha[0].vec);
        flip_to(a2, opt.align->alpha[1].vec);
        flip_to(a3, opt.align->alpha[2].vec);
    } else {
        // orient (alpha_1, alpha_2, alpha_3) positively: det(p, a1, a2, a3) > 0
        const double o = det({normalized(p.coords), a1, a2, a3});
        if (o < 0.0)
            for (double& x : a1) x = -x;
    }

    d.alpha = {TangentVector{d.p, a1}, TangentVector{d.p, a2}, TangentVector{d.p, a3}};

    const Vec dfa2 = raw.df(a2);
    const Vec dfa3 = raw.df(a3);
    d.beta = {scaled(dfa2, 1.0 / d.lambda), scaled(dfa3, 1.0 / d.mu)};

    const double nl = std::sqrt(1.0 + d.lambda * d.lambda);
    const double nm = std::sqrt(1.0 + d.mu * d.mu);
    d.e = {TangentVector{d.p, a1}, TangentVector{d.p, scaled(a2, 1.0 / nl)},
           TangentVector{d.p, scaled(a3, 1.0 / nm)}};
    d.xi = {ProductVector{scaled(a2, -d.lambda / nl), scaled(d.beta[0], 1.0 / nl)},
            ProductVector{scaled(a3, -d.mu / nm), scaled(d.beta[1], 1.0 / nm)}};

    // keep the raw frame consistent with the adjusted one
    raw.alpha = {a1, a2, a3};
    raw.df_alpha = {Vec(3, 0.0), dfa2, dfa3};
    raw.beta = {Vec(), d.beta[0], d.beta[1]};
    raw.near_conformal = d.near_conformal;
    d.raw = std::move(raw);
    return d;
}

Vec hessian_B_pair(const MapUnderTest& f, const SpherePoint& p, const Vec& u, const Vec& v,
                   const JetOptions& opt) {
    const auto diag = [&](const Vec& w) -> Vec {
        const double n = norm(w);
        if (n < 1e-14) return Vec(f.target_ambient_dim(), 0.0);
        const GreatCircleJet j = great_circle_jet(f, p, scaled(w, 1.0 / n), opt);
        const SpherePoint q = f.apply(p);
        return scaled(tangential_part(j.second, q.coords), n * n);
    };
    if (&u == &v) return diag(u);
    Vec wp = add(u, v), wm = sub(u, v);
    Vec Bp = diag(wp), Bm = diag(wm);
    Vec out(Bp.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.25 * (Bp[i] - Bm[i]);
    return out;
}

ProductVector apply_A(const GraphData& data, const Vec&, const Vec&, const Vec& B_uv) {
    ProductVector A;
    A.m_part.assign(data.p.ambient_dim(), 0.0);
    A.n_part = B_uv;
    for (int k = 0; k < data.m(); ++k) {
        if (data.beta[k].empty()) continue;
        const double bk = dot(B_uv, data.beta[k]);
        const double s = data.sigma[k];
        const double w = 1.0 + s * s;
        axpy(A.m_part, -s * bk / w, data.alpha[k]);
        // (I + df df^t)^{-1}: eigenvalue w on the image direction beta_k
        axpy(A.n_part, bk / w - bk, data.beta[k]);
    }
    return A;
}

Vec christoffel_correction(const GraphData& data, const Vec& B_uv) {
    Vec out(data.p.ambient_dim(), 0.0);
    for (int k = 0; k < data.m(); ++k) {
        if (data.beta[k].empty()) continue;
        const double s = data.sigma[k];
        axpy(out, s * dot(B_uv, data.beta[k]) / (1.0 + s * s), data.alpha[k]);
    }
    return out;
}

HessianComponents hessian_B(const MapUnderTest& f, const SpherePoint& p, const SingularData& data,
                            const JetOptions& opt) {
    HessianComponents out;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const Vec& u = data.alpha[i].vec;
            const Vec& v = data.alpha[j].vec;
            Vec B = (i == j) ? hessian_B_pair(f, p, u, u, opt) : hessian_B_pair(f, p, u, v, opt);
            out.B[i][j] = B;
            out.B[j][i] = B;
            for (int a = 0; a < 2; ++a)
                out.b[a][i][j] = out.b[a][j][i] = dot(B, data.beta[a]);
        }
    return out;
}

FundamentalForms second_fundamental_form(const MapUnderTest&, const SpherePoint&,
                                         const SingularData& data, const HessianComponents& bc) {
    FundamentalForms out;
    const double n2[3] = {1.0, 1.0 + data.lambda * data.lambda, 1.0 + data.mu * data.mu};
    out.H.m_part.assign(data.p.ambient_dim(), 0.0);
    out.H.n_part.assign(data.q.ambient_dim(), 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const ProductVector A =
                apply_A(data.raw, data.alpha[i].vec, data.alpha[j].vec, bc.B[i][j]);
            const double nf = std::sqrt(n2[i] * n2[j]);
            for (int a = 0; a < 2; ++a) {
                out.b[a][i][j] = bc.b[a][i][j];
                out.h[a][i][j] = A.inner(data.xi[a]) / nf;
                out.normA2 += out.h[a][i][j] * out.h[a][i][j];
            }
            out.normA2_direct += A.norm2() / (n2[i] * n2[j]);
            if (i == j) out.H.add_scaled(1.0 / n2[i], A);
        }
    out.normH = out.H.norm();
    return out;
}

double mean_curvature_residual(const MapUnderTest& f, const SpherePoint& p,
                               const JetOptions& opt) {
    DecomposeOptions dopt;
    dopt.jets = opt;
    const SingularData data = singular_decompose(f, p, dopt);
    const HessianComponents bc = hessian_B(f, p, data, opt);
    return second_fundamental_form(f, p, data, bc).normH;
}

InvariantSample fundamental_invariants(const MapUnderTest& f, const SpherePoint& p,
                                       const JetOptions& opt) {
    DecomposeOptions dopt;
    dopt.jets = opt;
    const GraphData data = decompose_graph(f, p, dopt);
    const int m = data.m();

    InvariantSample out;
    out.sigma = data.sigma;
    ProductVector H;
    H.m_part.assign(p.ambient_dim(), 0.0);
    H.n_part.assign(f.target_ambient_dim(), 0.0);
    for (int i = 0; i < m; ++i) {
        const double wi = 1.0 + data.sigma[i] * data.sigma[i];
        for (int j = i; j < m; ++j) {
            const double wj = 1.0 + data.sigma[j] * data.sigma[j];
            const Vec B = hessian_B_pair(f, p, data.alpha[i], data.alpha[j], opt);
            const ProductVector A = apply_A(data, data.alpha[i], data.alpha[j], B);
            const double contrib = A.norm2() / (wi * wj);
            out.normA2 += (i == j) ? contrib : 2.0 * contrib;
            if (i == j) H.add_scaled(1.0 / wi, A);
        }
    }
    out.normH = H.norm();
    return out;
}

} // namespace mmk
