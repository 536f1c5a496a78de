#ifndef MMK_GRAPHCORE_HPP
#define MMK_GRAPHCORE_HPP

#include <array>
#include <optional>

#include "charts.hpp"
#include "geometry.hpp"
#include "map.hpp"

namespace mmk {

// Full singular value decomposition of df at a point, any source dimension.
// sigma is ascending; alpha is the g_M-orthonormal eigenframe in ambient
// coordinates; df_alpha[i] = df(alpha[i]) (zero for kernel directions);
// beta[i] = df_alpha[i]/sigma[i] where sigma[i] > 0.
struct GraphData {
    SpherePoint p;
    SpherePoint q; // f(p)
    std::vector<double> sigma;
    std::vector<Vec> alpha;
    std::vector<Vec> df_alpha;
    std::vector<Vec> beta; // empty entries for kernel directions
    bool near_conformal = false;

    int m() const { return static_cast<int>(alpha.size()); }

    Vec df(const Vec& u) const; // expand u in alpha and push forward

    // graph metric g = g_M + f* g_N on tangent vectors at p
    double graph_inner(const Vec& u, const Vec& v) const {
        return dot(u, v) + dot(df(u), df(v));
    }
};

struct SingularData; // below

struct DecomposeOptions {
    JetOptions jets;
    double kernel_tol = 1e-8;    // largest admissible kernel eigenvalue
    double rank_tol = 1e-10;     // RankDeficient below this
    double conformal_tol = 1e-8; // near-conformal flag threshold
    int tie_axis = 0;            // reference ambient axis for the tie-break
    const SingularData* align = nullptr; // sign continuity reference
};

// S^3 -> S^2 singular data with the frames of the graph construction.
struct SingularData {
    SpherePoint p;
    SpherePoint q;
    double lambda = 0.0; // smaller nonzero singular value
    double mu = 0.0;     // larger singular value
    std::array<TangentVector, 3> alpha; // alpha[0] spans the kernel
    std::array<Vec, 2> beta;            // beta_2, beta_3 at q
    std::array<TangentVector, 3> e;     // graph-orthonormal frame
    std::array<ProductVector, 2> xi;    // normal frame xi_4, xi_5
    bool near_conformal = false;
    GraphData raw;
};

GraphData decompose_graph(const MapUnderTest& f, const SpherePoint& p,
                          const DecomposeOptions& opt = {});

SingularData singular_decompose(const MapUnderTest& f, const SpherePoint& p,
                                const DecomposeOptions& opt = {});

// Hessian B(u, v) of the map at p for arbitrary tangent vectors, as an
// ambient target vector (tangential projection of the curve second
// derivative, mixed entries by polarization).
Vec hessian_B_pair(const MapUnderTest& f, const SpherePoint& p, const Vec& u, const Vec& v,
                   const JetOptions& opt = {});

// A(u, v) of the graph from a precomputed B(u, v).
ProductVector apply_A(const GraphData& data, const Vec& u, const Vec& v, const Vec& B_uv);

// Connection difference (nabla^g - nabla^{g_M})(u, v) as an ambient tangent
// vector at p, from a precomputed B(u, v).
Vec christoffel_correction(const GraphData& data, const Vec& B_uv);

// b^alpha_ij components for the S^3 case (alpha in {4,5} -> index 0/1).
struct HessianComponents {
    double b[2][3][3] = {};
    std::array<std::array<Vec, 3>, 3> B; // ambient B(alpha_i, alpha_j)
};

HessianComponents hessian_B(const MapUnderTest& f, const SpherePoint& p, const SingularData& data,
                            const JetOptions& opt = {});

struct FundamentalForms {
    double b[2][3][3] = {};
    double h[2][3][3] = {};
    ProductVector H;
    double normA2 = 0.0;        // sum of squared h components
    double normA2_direct = 0.0; // frame-free norm of A
    double normH = 0.0;
};

FundamentalForms second_fundamental_form(const MapUnderTest& f, const SpherePoint& p,
                                         const SingularData& data, const HessianComponents& bc);

// |H| at p (any of the supported maps with S^3 source).
double mean_curvature_residual(const MapUnderTest& f, const SpherePoint& p,
                               const JetOptions& opt = {});

// Frame-free invariants for any source dimension (used by the Hopf scans).
struct InvariantSample {
    double normA2 = 0.0;
    double normH = 0.0;
    std::vector<double> sigma;
};

InvariantSample fundamental_invariants(const MapUnderTest& f, const SpherePoint& p,
                                       const JetOptions& opt = {});

} // namespace mmk

#endif
