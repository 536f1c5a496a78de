#include "profile.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mmk {

std::vector<double> GeneratingProfile::standard_grid() {
    std::vector<double> g(kGridPoints);
    const int n = kGridPoints - 1;
    for (int j = 0; j <= n; ++j)
        g[j] = (M_PI / 4.0) * (1.0 - std::cos(M_PI * j / n));
    g.front() = 0.0;
    g.back() = M_PI / 2.0;
    return g;
}

GeneratingProfile GeneratingProfile::sampled(std::vector<double> grid, std::vector<double> values,
                                             std::vector<double> derivs, double left_coeff,
                                             double right_coeff) {
    if (grid.size() < 2 || grid.size() != values.size() || grid.size() != derivs.size())
        fail(ErrorCode::InvalidArgument, "profile grid/values/derivs size mismatch");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            fail(ErrorCode::InvalidArgument, "profile grid must be strictly increasing");
    GeneratingProfile p;
    p.grid_ = std::move(grid);
    p.values_ = std::move(values);
    p.derivs_ = std::move(derivs);
    p.left_coeff_ = left_coeff;
    p.right_coeff_ = right_coeff;
    return p;
}

GeneratingProfile GeneratingProfile::analytic(Fn fa, Fn fas, Fn fass) {
    GeneratingProfile p;
    p.grid_ = standard_grid();
    p.values_.resize(p.grid_.size());
    p.derivs_.resize(p.grid_.size());
    for (std::size_t i = 0; i < p.grid_.size(); ++i) {
        p.values_[i] = fa(p.grid_[i]);
        p.derivs_[i] = fas(p.grid_[i]);
    }
    p.left_coeff_ = p.derivs_.front();
    p.right_coeff_ = p.derivs_.back();
    p.fa_ = std::move(fa);
    p.fas_ = std::move(fas);
    p.fass_ = std::move(fass);
    return p;
}

GeneratingProfile GeneratingProfile::linear(double slope) {
    return analytic([slope](double s) { return slope * s; },
                    [slope](double) { return slope; },
                    [](double) { return 0.0; });
}

GeneratingProfile::Eval2 GeneratingProfile::eval2(double s) const {
    if (fa_) {
        Eval2 e;
        e.a = fa_(s);
        e.as = fas_(s);
        if (fass_) {
            e.ass = fass_(s);
        } else {
            const double h = 1e-6;
            e.ass = (fas_(s + h) - fas_(s - h)) / (2.0 * h);
        }
        return e;
    }
    // cubic Hermite segment
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
    std::size_t i1 = static_cast<std::size_t>(it - grid_.begin());
    if (i1 == 0) i1 = 1;
    if (i1 >= grid_.size()) i1 = grid_.size() - 1;
    const std::size_t i0 = i1 - 1;
    const double h = grid_[i1] - grid_[i0];
    const double t = (s - grid_[i0]) / h;
    const double a0 = values_[i0], a1 = values_[i1];
    const double m0 = derivs_[i0] * h, m1 = derivs_[i1] * h;

    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);

    const double d00 = 6 * t * t - 6 * t;
    const double d10 = 3 * t * t - 4 * t + 1;
    const double d01 = -6 * t * t + 6 * t;
    const double d11 = 3 * t * t - 2 * t;

    const double s00 = 12 * t - 6;
    const double s10 = 6 * t - 4;
    const double s01 = -12 * t + 6;
    const double s11 = 6 * t - 2;

    Eval2 e;
    e.a = h00 * a0 + h10 * m0 + h01 * a1 + h11 * m1;
    e.as = (d00 * a0 + d10 * m0 + d01 * a1 + d11 * m1) / h;
    e.ass = (s00 * a0 + s10 * m0 + s01 * a1 + s11 * m1) / (h * h);
    return e;
}

double profile_node_ass(const GeneratingProfile& p, std::size_t i) {
    const std::vector<double>& g = p.grid();
    const std::vector<double>& d = p.derivs();
    const std::size_t n = g.size();
    if (n < 5) fail(ErrorCode::InvalidArgument, "profile too small for node reconstruction");
    std::size_t lo = (i < 2) ? 0 : i - 2;
    if (lo + 5 > n) lo = n - 5;
    // derivative at g[i] of the Lagrange interpolant of (g, d) on 5 nodes
    double acc = 0.0;
    for (std::size_t j = lo; j < lo + 5; ++j) {
        double dLj = 0.0;
        for (std::size_t m = lo; m < lo + 5; ++m) {
            if (m == j) continue;
            double term = 1.0 / (g[j] - g[m]);
            for (std::size_t r = lo; r < lo + 5; ++r) {
                if (r == j || r == m) continue;
                term *= (g[i] - g[r]) / (g[j] - g[r]);
            }
            dLj += term;
        }
        acc += d[j] * dLj;
    }
    return acc;
}

bool GeneratingProfile::is_solution_candidate(double tol) const {
    if (std::fabs(values_.front()) > tol) return false;
    if (std::fabs(values_.back() - M_PI) > tol) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < -tol || values_[i] > M_PI + tol) return false;
        if (i > 0 && values_[i] < values_[i - 1] - 1e-12) return false;
    }
    return true;
}

} // namespace mmk
