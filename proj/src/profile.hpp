#ifndef MMK_PROFILE_HPP
#define MMK_PROFILE_HPP

#include <functional>
#include <vector>

#include "jet.hpp"

namespace mmk {

// Generating function a(s) of an equivariant map, on [0, pi/2].
// Holds dense grid samples of a and a_s plus the endpoint slopes; an
// analytic backing can be attached so that evaluations are exact instead
// of interpolated (used for closed-form test profiles).
class GeneratingProfile {
public:
    struct Eval2 {
        double a;
        double as;
        double ass;
    };

    using Fn = std::function<double(double)>;

    GeneratingProfile() = default;

    // Grid-backed profile; grid must be strictly increasing in [0, pi/2].
    static GeneratingProfile sampled(std::vector<double> grid, std::vector<double> values,
                                     std::vector<double> derivs, double left_coeff,
                                     double right_coeff);

    // Analytic profile sampled onto the standard grid. fass may be null, in
    // which case the second derivative comes from differencing fas.
    static GeneratingProfile analytic(Fn fa, Fn fas, Fn fass);

    // a(s) = slope * s
    static GeneratingProfile linear(double slope);

    Eval2 eval2(double s) const;
    double a(double s) const { return eval2(s).a; }
    double as(double s) const { return eval2(s).as; }

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& derivs() const { return derivs_; }
    double left_coeff() const { return left_coeff_; }
    double right_coeff() const { return right_coeff_; }

    // Boundary conditions a(0)=0, a(pi/2)=pi within tol, values inside
    // [0, pi], non-decreasing samples.
    bool is_solution_candidate(double tol = 1e-10) const;

    static constexpr int kGridPoints = 2001;
    // Chebyshev-Lobatto nodes on [0, pi/2] (clustered at the endpoints).
    static std::vector<double> standard_grid();

private:
    std::vector<double> grid_, values_, derivs_;
    double left_coeff_ = 0.0, right_coeff_ = 0.0;
    Fn fa_, fas_, fass_;
};

// Second derivative of the profile at grid node i, reconstructed from the
// tabulated first derivatives by a local degree-4 polynomial fit. Used to
// check tabulated solver output against the defining equation without
// trusting the interpolant.
double profile_node_ass(const GeneratingProfile& p, std::size_t i);

// Chain rule of a profile through a 1-parameter jet.
inline double profile_apply(const GeneratingProfile& p, double s) { return p.a(s); }

inline Jet2 profile_apply(const GeneratingProfile& p, const Jet2& s) {
    const GeneratingProfile::Eval2 e = p.eval2(s.v);
    return {e.a, e.as * s.d1, e.ass * s.d1 * s.d1 + e.as * s.d2};
}

} // namespace mmk

#endif
