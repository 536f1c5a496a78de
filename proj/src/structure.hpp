#ifndef MMK_STRUCTURE_HPP
#define MMK_STRUCTURE_HPP

#include <string>
#include <vector>

#include "graphcore.hpp"

namespace mmk {

struct AngleFunctions {
    double u1 = 1.0; // 1/sqrt((1+lambda^2)(1+mu^2))
    double u2 = 0.0; // lambda mu u1
    double w = 1.0;  // u1 + u2
};

AngleFunctions angle_functions(double lambda, double mu);
AngleFunctions angle_functions(const MapUnderTest& f, const SpherePoint& p);

// Differential of the Gauss map, phi(v) = -nabla^g_v e_1, computed two
// ways: directly from the derivative of the kernel field, and from the
// h-component quotients phi_i2 = h^4_1i/lambda, phi_i3 = h^5_1i/mu.
struct GaussTensor {
    double phi_direct[3][2] = {};
    double phi_h[3][2] = {};
    double max_discrepancy = 0.0;
    double re_norm2 = 0.0; // sum_i phi_i2^2
    double im_norm2 = 0.0; // sum_i phi_i3^2
    bool tie_broken = false;
};

GaussTensor gauss_tensor(const MapUnderTest& f, const SpherePoint& p,
                         bool accept_tie_break = false);

struct NamedResidual {
    std::string name;
    double value;
};

// Raw measurements feeding the residual assembly; filled by numerical
// differentiation of the decomposition fields, or synthetically in tests.
struct StructureInputs {
    double lambda = 0.0, mu = 0.0;
    double h[2][3][3] = {};
    double b[2][3][3] = {};
    double dlam_alpha[3] = {}; // alpha_i(lambda)
    double dmu_alpha[3] = {};  // alpha_i(mu)
    double conn_s3[3][3][3] = {};  // <nabla^{S3}_{alpha_i} alpha_j, alpha_k>
    double conn_g[3][3][3] = {};   // g(nabla^g_{e_i} e_j, e_k)
    double normal_conn[3] = {};    // <nabla^perp_{e_i} xi_4, xi_5>
    double bracket12[3] = {};      // g-components of [e_1, e_2] on the e frame
    double bracket13[3] = {};
    double phi_direct[3][2] = {};
};

// Residuals of the local structure identities (frame dictionaries, the
// three connection tables, the bracket identities, and the dual-route
// Gauss tensor), assembled from the raw measurements.
std::vector<NamedResidual> assemble_structure_residuals(const StructureInputs& in);

// Measure the inputs at p and assemble. Requires mu - lambda >= 1e-6.
std::vector<NamedResidual> structure_residuals(const MapUnderTest& f, const SpherePoint& p);

struct BochnerResiduals {
    double grad_u1 = 0.0; // max_k |du1(e_k) + u1 (lambda h^4_k2 + mu h^5_k3)|
    double lap_u1 = 0.0;
    double grad_u2 = 0.0;
    double lap_u2 = 0.0;
    double grad_w = 0.0; // | |grad w|^2 measured - closed form |
    double lap_w = 0.0;
    double measured_grad_w = 0.0; // |grad w| itself
    AngleFunctions angles;
};

// Residuals of the gradient and Laplacian formulas of u1, u2 and w for a
// minimal map; throws NotMinimal when |H| exceeds minimal_tol.
BochnerResiduals bochner_residuals(const MapUnderTest& f, const SpherePoint& p,
                                   double minimal_tol = 1e-6);

// Pinching quantity C = (mu-lambda)(sum (h^5_1k)^2/mu - sum (h^4_1k)^2/lambda).
double pinching_quantity(const FundamentalForms& ff, double lambda, double mu);
double pinching_quantity(const MapUnderTest& f, const SpherePoint& p);

} // namespace mmk

#endif
