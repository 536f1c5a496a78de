#include "structure.hpp"

#include <cmath>

#include "error.hpp"

namespace mmk {

namespace {

double sq(double x) { return x * x; }

// Aligned decompositions at four points of the unit-speed great circle
// through p in direction dir; used for Richardson first derivatives of the
// frame fields and, with a coarser step, for second derivatives of scalars.
struct DirSamples {
    SingularData sp, sm, sp2, sm2;
    double h;
};

SpherePoint circle_point(const SpherePoint& p, const Vec& dir, double t) {
    Vec x = scaled(p.coords, std::cos(t));
    axpy(x, std::sin(t), dir);
    return SpherePoint::project(std::move(x), p.radius);
}

DirSamples collect(const MapUnderTest& f, const SpherePoint& p, const SingularData& center,
                   const Vec& unit_dir, double h) {
    DecomposeOptions opt;
    opt.align = &center;
    DirSamples s;
    s.h = h;
    s.sp = singular_decompose(f, circle_point(p, unit_dir, h), opt);
    s.sm = singular_decompose(f, circle_point(p, unit_dir, -h), opt);
    s.sp2 = singular_decompose(f, circle_point(p, unit_dir, h / 2), opt);
    s.sm2 = singular_decompose(f, circle_point(p, unit_dir, -h / 2), opt);
    return s;
}

// Richardson first derivative of a scalar extractor along the sample curve.
template <class Fn>
double dscalar(const DirSamples& s, Fn&& fn) {
    const double dh = (fn(s.sp) - fn(s.sm)) / (2.0 * s.h);
    const double dh2 = (fn(s.sp2) - fn(s.sm2)) / s.h;
    return (4.0 * dh2 - dh) / 3.0;
}

// Richardson second derivative of a scalar extractor (uses the center).
template <class Fn>
double d2scalar(const DirSamples& s, double center_value, Fn&& fn) {
    const double dh = (fn(s.sp) - 2.0 * center_value + fn(s.sm)) / (s.h * s.h);
    const double dh2 = (fn(s.sp2) - 2.0 * center_value + fn(s.sm2)) / (s.h * s.h / 4.0);
    return (4.0 * dh2 - dh) / 3.0;
}

// Richardson first derivative of a vector extractor.
template <class Fn>
Vec dvector(const DirSamples& s, Fn&& fn) {
    const Vec vp = fn(s.sp), vm = fn(s.sm), vp2 = fn(s.sp2), vm2 = fn(s.sm2);
    Vec out(vp.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double dh = (vp[i] - vm[i]) / (2.0 * s.h);
        const double dh2 = (vp2[i] - vm2[i]) / s.h;
        out[i] = (4.0 * dh2 - dh) / 3.0;
    }
    return out;
}

Vec xi_seven(const SingularData& sd, int a) {
    Vec v(7);
    for (int i = 0; i < 4; ++i) v[i] = sd.xi[a].m_part[i];
    for (int i = 0; i < 3; ++i) v[4 + i] = sd.xi[a].n_part[i];
    return v;
}

Vec graph_frame_seven(const SingularData& sd, int j) {
    Vec v(7);
    const Vec dfe = sd.raw.df(sd.e[j].vec);
    for (int i = 0; i < 4; ++i) v[i] = sd.e[j].vec[i];
    for (int i = 0; i < 3; ++i) v[4 + i] = dfe[i];
    return v;
}

} // namespace

AngleFunctions angle_functions(double lambda, double mu) {
    AngleFunctions a;
    a.u1 = 1.0 / std::sqrt((1.0 + lambda * lambda) * (1.0 + mu * mu));
    a.u2 = lambda * mu * a.u1;
    a.w = a.u1 + a.u2;
    return a;
}

AngleFunctions angle_functions(const MapUnderTest& f, const SpherePoint& p) {
    const GraphData d = decompose_graph(f, p);
    const int m = d.m();
    return angle_functions(d.sigma[m - 2], d.sigma[m - 1]);
}

GaussTensor gauss_tensor(const MapUnderTest& f, const SpherePoint& p, bool accept_tie_break) {
    const SingularData sd = singular_decompose(f, p);
    if (sd.near_conformal && !accept_tie_break)
        fail(ErrorCode::NumericalBreakdown,
             "near-conformal frame ambiguity: pass accept_tie_break to proceed");
    const HessianComponents bc = hessian_B(f, p, sd);
    const FundamentalForms ff = second_fundamental_form(f, p, sd, bc);

    GaussTensor out;
    out.tie_broken = sd.near_conformal;
    const double nf[3] = {1.0, std::sqrt(1.0 + sq(sd.lambda)), std::sqrt(1.0 + sq(sd.mu))};
    for (int i = 0; i < 3; ++i) {
        const DirSamples s = collect(f, p, sd, sd.alpha[i].vec, 1e-5);
        const Vec da1 = dvector(s, [](const SingularData& q) { return q.alpha[0].vec; });
        for (int j = 0; j < 2; ++j)
            out.phi_direct[i][j] = -dot(da1, sd.e[j + 1].vec) / nf[i];
        out.phi_h[i][0] = ff.h[0][0][i] / sd.lambda;
        out.phi_h[i][1] = ff.h[1][0][i] / sd.mu;
    }
    for (int i = 0; i < 3; ++i) {
        out.re_norm2 += sq(out.phi_h[i][0]);
        out.im_norm2 += sq(out.phi_h[i][1]);
        for (int j = 0; j < 2; ++j)
            out.max_discrepancy =
                std::max(out.max_discrepancy, std::fabs(out.phi_direct[i][j] - out.phi_h[i][j]));
    }
    return out;
}

std::vector<NamedResidual> assemble_structure_residuals(const StructureInputs& in) {
    const double L = in.lambda, M = in.mu;
    const double wl = 1.0 + L * L, wm = 1.0 + M * M;
    const double u1 = 1.0 / std::sqrt(wl * wm);
    const double nf[3] = {1.0, std::sqrt(wl), std::sqrt(wm)};
    const auto H4 = [&](int i, int j) { return in.h[0][i][j]; };
    const auto H5 = [&](int i, int j) { return in.h[1][i][j]; };

    std::vector<NamedResidual> out;
    const auto push = [&](std::string name, double measured, double expected) {
        out.push_back({std::move(name), std::fabs(measured - expected)});
    };

    // Lemma 7.1: b dictionary
    push("7.1:b4_11", in.b[0][0][0], std::sqrt(wl) * H4(0, 0));
    push("7.1:b4_12", in.b[0][0][1], in.dlam_alpha[0]);
    push("7.1:b4_13", in.b[0][0][2], std::sqrt(wl * wm) * H4(0, 2));
    push("7.1:b4_22", in.b[0][1][1], in.dlam_alpha[1]);
    push("7.1:b4_23", in.b[0][1][2], in.dlam_alpha[2]);
    push("7.1:b4_33", in.b[0][2][2], wm * std::sqrt(wl) * H4(2, 2));
    push("7.1:b5_11", in.b[1][0][0], std::sqrt(wm) * H5(0, 0));
    push("7.1:b5_13", in.b[1][0][2], in.dmu_alpha[0]);
    push("7.1:b5_12", in.b[1][0][1], std::sqrt(wl * wm) * H5(0, 1));
    push("7.1:b5_33", in.b[1][2][2], in.dmu_alpha[2]);
    push("7.1:b5_23", in.b[1][1][2], in.dmu_alpha[1]);
    push("7.1:b5_22", in.b[1][1][1], wl * std::sqrt(wm) * H5(1, 1));

    // Lemma 7.1: h = e(arctan) dictionary; e_i(arctan) from the alpha
    // derivatives of lambda and mu
    const auto e_arctan_lam = [&](int i) { return in.dlam_alpha[i] / (wl * nf[i]); };
    const auto e_arctan_mu = [&](int i) { return in.dmu_alpha[i] / (wm * nf[i]); };
    push("7.1:h4_12", H4(0, 1), e_arctan_lam(0));
    push("7.1:h4_22", H4(1, 1), e_arctan_lam(1));
    push("7.1:h4_23", H4(1, 2), e_arctan_lam(2));
    push("7.1:h5_13", H5(0, 2), e_arctan_mu(0));
    push("7.1:h5_23", H5(1, 2), e_arctan_mu(1));
    push("7.1:h5_33", H5(2, 2), e_arctan_mu(2));

    // Lemma 7.2: connection of the spherical metric on the alpha frame
    const double mm = M * M - L * L;
    double C[3][3][3] = {};
    C[0][0][1] = -std::sqrt(wl) / L * H4(0, 0);
    C[0][0][2] = -std::sqrt(wm) / M * H5(0, 0);
    C[0][1][0] = -C[0][0][1];
    C[0][1][2] = -(M * H5(0, 1) + L * H4(0, 2)) / (mm * u1);
    C[0][2][0] = -C[0][0][2];
    C[0][2][1] = -C[0][1][2];
    C[1][0][1] = -in.dlam_alpha[0] / L;
    C[1][0][2] = -H5(0, 1) / (M * u1);
    C[1][1][0] = -C[1][0][1];
    C[1][1][2] = -(u1 * L * in.dlam_alpha[2] + M * std::sqrt(wl) * H5(1, 1)) / (mm * u1);
    C[1][2][0] = -C[1][0][2];
    C[1][2][1] = -C[1][1][2];
    C[2][0][1] = -H4(0, 2) / (L * u1);
    C[2][0][2] = -in.dmu_alpha[0] / M;
    C[2][1][0] = -C[2][0][1];
    C[2][1][2] = -(u1 * M * in.dmu_alpha[1] + L * std::sqrt(wm) * H4(2, 2)) / (mm * u1);
    C[2][2][0] = -C[2][0][2];
    C[2][2][1] = -C[2][1][2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double worst = 0.0;
            for (int k = 0; k < 3; ++k) {
                if (k == j) continue;
                worst = std::max(worst, std::fabs(in.conn_s3[i][j][k] - C[i][j][k]));
            }
            push("7.2:a" + std::to_string(i + 1) + "a" + std::to_string(j + 1), worst, 0.0);
        }

    // Lemma 7.3: normal connection
    const double N[3] = {
        (L * wm * H5(0, 1) + M * wl * H4(0, 2)) / (-mm),
        (M * (in.dlam_alpha[2] / nf[2]) + L * wm * H5(1, 1)) / (-mm),
        (L * (in.dmu_alpha[1] / nf[1]) + M * wl * H4(2, 2)) / (-mm),
    };
    for (int i = 0; i < 3; ++i)
        push("7.3:e" + std::to_string(i + 1), in.normal_conn[i], N[i]);

    // Lemma 7.4: connection of the graph metric on the e frame
    double D[3][3][3] = {};
    D[0][0][1] = -H4(0, 0) / L;
    D[0][0][2] = -H5(0, 0) / M;
    D[0][1][0] = -D[0][0][1];
    D[0][1][2] = -(wl * M * H5(0, 1) + L * wm * H4(0, 2)) / mm;
    D[0][2][0] = -D[0][0][2];
    D[0][2][1] = -D[0][1][2];
    D[1][0][1] = -e_arctan_lam(0) / L;
    D[1][0][2] = -H5(0, 1) / M;
    D[1][1][0] = -D[1][0][1];
    D[1][1][2] = -(M * wl * H5(1, 1) + L * wm * e_arctan_lam(2)) / mm;
    D[1][2][0] = -D[1][0][2];
    D[1][2][1] = -D[1][1][2];
    D[2][0][1] = -H4(0, 2) / L;
    D[2][0][2] = -e_arctan_mu(0) / M;
    D[2][1][0] = -D[2][0][1];
    D[2][1][2] = -(M * wl * e_arctan_mu(1) + L * wm * H4(2, 2)) / mm;
    D[2][2][0] = -D[2][0][2];
    D[2][2][1] = -D[2][1][2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double worst = 0.0;
            for (int k = 0; k < 3; ++k) {
                if (k == j) continue;
                worst = std::max(worst, std::fabs(in.conn_g[i][j][k] - D[i][j][k]));
            }
            push("7.4:e" + std::to_string(i + 1) + "e" + std::to_string(j + 1), worst, 0.0);
        }

    // Lemma 7.4: bracket identities
    const double br12[3] = {H4(0, 0) / L, e_arctan_lam(0) / L,
                            L * wm * (L * H5(0, 1) + M * H4(0, 2)) / (M * (-mm))};
    const double br13[3] = {H5(0, 0) / M, M * wl * (L * H5(0, 1) + M * H4(0, 2)) / (L * mm),
                            e_arctan_mu(0) / M};
    double worst12 = 0.0, worst13 = 0.0;
    for (int k = 0; k < 3; ++k) {
        worst12 = std::max(worst12, std::fabs(in.bracket12[k] - br12[k]));
        worst13 = std::max(worst13, std::fabs(in.bracket13[k] - br13[k]));
    }
    push("7.4:[e1,e2]", worst12, 0.0);
    push("7.4:[e1,e3]", worst13, 0.0);

    // Lemma 7.5: dual-route Gauss tensor
    double worst75 = 0.0;
    for (int i = 0; i < 3; ++i) {
        worst75 = std::max(worst75, std::fabs(in.phi_direct[i][0] - H4(0, i) / L));
        worst75 = std::max(worst75, std::fabs(in.phi_direct[i][1] - H5(0, i) / M));
    }
    push("7.5:phi", worst75, 0.0);

    return out;
}

std::vector<NamedResidual> structure_residuals(const MapUnderTest& f, const SpherePoint& p) {
    const SingularData sd = singular_decompose(f, p);
    if (sd.mu - sd.lambda < 1e-6)
        fail(ErrorCode::NumericalBreakdown, "structure residuals need distinct singular values");
    const HessianComponents bc = hessian_B(f, p, sd);
    const FundamentalForms ff = second_fundamental_form(f, p, sd, bc);

    StructureInputs in;
    in.lambda = sd.lambda;
    in.mu = sd.mu;
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                in.h[a][i][j] = ff.h[a][i][j];
                in.b[a][i][j] = ff.b[a][i][j];
            }

    const double nf[3] = {1.0, std::sqrt(1.0 + sq(sd.lambda)), std::sqrt(1.0 + sq(sd.mu))};

    DirSamples s[3];
    for (int i = 0; i < 3; ++i) s[i] = collect(f, p, sd, sd.alpha[i].vec, 1e-5);

    for (int i = 0; i < 3; ++i) {
        in.dlam_alpha[i] = dscalar(s[i], [](const SingularData& q) { return q.lambda; });
        in.dmu_alpha[i] = dscalar(s[i], [](const SingularData& q) { return q.mu; });
    }

    // spherical connection on the alpha frame
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec d = dvector(s[i], [j](const SingularData& q) { return q.alpha[j].vec; });
            for (int k = 0; k < 3; ++k) in.conn_s3[i][j][k] = dot(d, sd.alpha[k].vec);
        }

    // graph connection on the e frame: derivative of (e_j, df e_j) along
    // e_i, paired with the product frame dF(e_k); direction e_i is the
    // alpha_i derivative over the normalizer
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec d = dvector(s[i], [j](const SingularData& q) { return graph_frame_seven(q, j); });
            for (int k = 0; k < 3; ++k)
                in.conn_g[i][j][k] = dot(d, graph_frame_seven(sd, k)) / nf[i];
        }

    // normal connection
    for (int i = 0; i < 3; ++i) {
        const Vec d = dvector(s[i], [](const SingularData& q) { return xi_seven(q, 0); });
        in.normal_conn[i] = dot(d, xi_seven(sd, 1)) / nf[i];
    }

    // brackets [e_1, e_j] = D_{e_1}(e_j) - D_{e_j}(e_1)
    for (int j = 1; j < 3; ++j) {
        const Vec d1 = dvector(s[0], [j](const SingularData& q) { return q.e[j].vec; });
        const Vec d2 = dvector(s[j], [](const SingularData& q) { return q.e[0].vec; });
        Vec br = d1;
        axpy(br, -1.0 / nf[j], d2);
        const Vec dfbr = sd.raw.df(br);
        for (int k = 0; k < 3; ++k) {
            const double g = dot(br, sd.e[k].vec) + dot(dfbr, sd.raw.df(sd.e[k].vec));
            (j == 1 ? in.bracket12 : in.bracket13)[k] = g;
        }
    }

    // direct Gauss tensor
    for (int i = 0; i < 3; ++i) {
        const Vec da1 = dvector(s[i], [](const SingularData& q) { return q.alpha[0].vec; });
        for (int j = 0; j < 2; ++j) in.phi_direct[i][j] = -dot(da1, sd.e[j + 1].vec) / nf[i];
    }

    return assemble_structure_residuals(in);
}

BochnerResiduals bochner_residuals(const MapUnderTest& f, const SpherePoint& p,
                                   double minimal_tol) {
    const SingularData sd = singular_decompose(f, p);
    const HessianComponents bc = hessian_B(f, p, sd);
    const FundamentalForms ff = second_fundamental_form(f, p, sd, bc);
    if (ff.normH > minimal_tol)
        fail(ErrorCode::NotMinimal, "Bochner formulas assume a minimal map");

    const double L = sd.lambda, M = sd.mu;
    const double n2[3] = {1.0, 1.0 + L * L, 1.0 + M * M};
    const double nf[3] = {1.0, std::sqrt(n2[1]), std::sqrt(n2[2])};
    BochnerResiduals out;
    out.angles = angle_functions(L, M);
    const double u1 = out.angles.u1, u2 = out.angles.u2;

    const auto val_u1 = [](const SingularData& q) { return angle_functions(q.lambda, q.mu).u1; };
    const auto val_u2 = [](const SingularData& q) { return angle_functions(q.lambda, q.mu).u2; };
    const auto val_w = [](const SingularData& q) { return angle_functions(q.lambda, q.mu).w; };

    DirSamples fine[3], coarse[3];
    for (int i = 0; i < 3; ++i) {
        fine[i] = collect(f, p, sd, sd.alpha[i].vec, 1e-5);
        coarse[i] = collect(f, p, sd, sd.alpha[i].vec, 5e-3);
    }

    // first derivatives along the alpha frame
    double du1_a[3], du2_a[3], dw_a[3];
    for (int i = 0; i < 3; ++i) {
        du1_a[i] = dscalar(fine[i], val_u1);
        du2_a[i] = dscalar(fine[i], val_u2);
        dw_a[i] = dscalar(fine[i], val_w);
    }

    const auto H4 = [&](int i, int j) { return ff.h[0][i][j]; };
    const auto H5 = [&](int i, int j) { return ff.h[1][i][j]; };

    // gradient residuals, componentwise on the e frame
    for (int k = 0; k < 3; ++k) {
        const double du1_e = du1_a[k] / nf[k];
        const double du2_e = du2_a[k] / nf[k];
        out.grad_u1 = std::max(out.grad_u1, std::fabs(du1_e + u1 * (L * H4(k, 1) + M * H5(k, 2))));
        out.grad_u2 = std::max(out.grad_u2, std::fabs(du2_e - u1 * (M * H4(k, 1) + L * H5(k, 2))));
    }

    // |grad w|^2: measured vs closed form
    double gw2 = 0.0;
    for (int k = 0; k < 3; ++k) gw2 += sq(dw_a[k] / nf[k]);
    out.measured_grad_w = std::sqrt(gw2);
    const double gw2_formula =
        sq(M - L) * u1 * u1 *
        (sq(H4(0, 1) - H5(0, 2)) + sq(H4(1, 2) - H5(2, 2)) + sq(H4(1, 1) - H5(1, 2)));
    out.grad_w = std::fabs(gw2 - gw2_formula);

    // Laplacian: sum_i [ d^2/dt^2 (u o gamma_i) - du(W_i) ] / (1 + sigma_i^2),
    // with gamma_i the unit-speed alpha_i great circle and
    // W_i = (I + df^t df)^{-1} df^t B(alpha_i, alpha_i)
    const auto lap_of = [&](const auto& val, double center, const double* du_a) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double dd = d2scalar(coarse[i], center, val);
            const Vec W = christoffel_correction(sd.raw, bc.B[i][i]);
            double duW = 0.0;
            for (int k = 0; k < 3; ++k) duW += dot(W, sd.alpha[k].vec) * du_a[k];
            acc += (dd - duW) / n2[i];
        }
        return acc;
    };

    const double lap_u1_m = lap_of(val_u1, u1, du1_a);
    const double lap_u2_m = lap_of(val_u2, u2, du2_a);
    const double lap_w_m = lap_of(val_w, out.angles.w, dw_a);

    double cross = 0.0; // sum_k (h^4_2k h^5_3k - h^5_2k h^4_3k)
    for (int k = 0; k < 3; ++k) cross += H4(1, k) * H5(2, k) - H5(1, k) * H4(2, k);

    const double lap_u1_f = -ff.normA2 * u1 + 2.0 * L * M * u1 * cross -
                            2.0 * (L * L + M * M) * u1 * u1 * u1;
    out.lap_u1 = std::fabs(lap_u1_m - lap_u1_f);

    double hk2k3 = 0.0; // sum_k |h_k2|^2 + |h_k3|^2 over both normal slots
    for (int k = 0; k < 3; ++k)
        hk2k3 += sq(H4(k, 1)) + sq(H5(k, 1)) + sq(H4(k, 2)) + sq(H5(k, 2));
    double h41_sq = 0.0, h51_sq = 0.0;
    for (int k = 0; k < 3; ++k) {
        h41_sq += sq(H4(0, k));
        h51_sq += sq(H5(0, k));
    }
    const double lap_u2_f = -u2 * hk2k3 + 2.0 * u1 * cross + 4.0 * u1 * u1 * u2 +
                            (M / L) * u1 * h41_sq + (L / M) * u1 * h51_sq;
    out.lap_u2 = std::fabs(lap_u2_m - lap_u2_f);

    const double w = out.angles.w;
    const double lap_w_f =
        -w * (sq(H4(0, 1) - H5(0, 2)) + sq(H4(1, 2) - H5(2, 2)) + sq(H4(1, 1) - H5(1, 2))) -
        w * (sq(H4(1, 2) + H5(1, 1)) + sq(H5(0, 1) + H4(0, 2)) + sq(H4(2, 2) + H5(2, 1))) -
        (M - L) * u1 * (h51_sq / M - h41_sq / L) - 2.0 * sq(M - L) * u1 * u1 * u1;
    out.lap_w = std::fabs(lap_w_m - lap_w_f);

    return out;
}

double pinching_quantity(const FundamentalForms& ff, double lambda, double mu) {
    double h41 = 0.0, h51 = 0.0;
    for (int k = 0; k < 3; ++k) {
        h41 += sq(ff.h[0][0][k]);
        h51 += sq(ff.h[1][0][k]);
    }
    return (mu - lambda) * (h51 / mu - h41 / lambda);
}

double pinching_quantity(const MapUnderTest& f, const SpherePoint& p) {
    const SingularData sd = singular_decompose(f, p);
    const HessianComponents bc = hessian_B(f, p, sd);
    const FundamentalForms ff = second_fundamental_form(f, p, sd, bc);
    return pinching_quantity(ff, sd.lambda, sd.mu);
}

} // namespace mmk
