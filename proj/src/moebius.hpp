#ifndef MMK_MOEBIUS_HPP
#define MMK_MOEBIUS_HPP

#include <complex>

#include "error.hpp"
#include "jet.hpp"

namespace mmk {

// Fractional-linear transformation z -> (a z + b) / (c z + d) acting on the
// unit round 2-sphere through the stereographic identification. det != 0.
struct MoebiusMap {
    std::complex<double> a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    static MoebiusMap identity() { return {}; }
    static MoebiusMap dilation(double rho) {
        // z -> rho z, normalized to unit determinant
        const double s = std::sqrt(rho);
        return {{s, 0}, {0, 0}, {0, 0}, {1.0 / s, 0}};
    }

    std::complex<double> det() const { return a * d - b * c; }

    void validate() const {
        if (std::abs(det()) < 1e-14)
            fail(ErrorCode::InvalidArgument, "Moebius matrix must have nonzero determinant");
    }
};

// Action on the unit sphere in homogeneous coordinates: the input point is
// lifted to a projective representative (zn : zd), the matrix is applied,
// and the image is mapped back. Both charts of the lift are smooth where
// selected, so no output pole handling is needed. Works on jets.
//
// q, out: 3 ambient coordinates of unit-sphere points.
template <class T>
void moebius_apply(const MoebiusMap& m, const T* q, T* out) {
    T zn_re, zn_im, zd_re, zd_im;
    if (value(q[2]) <= 0.0) {
        zn_re = q[0];
        zn_im = q[1];
        zd_re = 1.0 - q[2];
        zd_im = T(0.0);
    } else {
        zn_re = 1.0 + q[2];
        zn_im = T(0.0);
        zd_re = q[0];
        zd_im = -q[1];
    }
    const auto cmul_add = [](std::complex<double> w, const T& xr, const T& xi,
                             std::complex<double> v, const T& yr, const T& yi, T& outr, T& outi) {
        outr = w.real() * xr - w.imag() * xi + v.real() * yr - v.imag() * yi;
        outi = w.real() * xi + w.imag() * xr + v.real() * yi + v.imag() * yr;
    };
    T wn_re, wn_im, wd_re, wd_im;
    cmul_add(m.a, zn_re, zn_im, m.b, zd_re, zd_im, wn_re, wn_im);
    cmul_add(m.c, zn_re, zn_im, m.d, zd_re, zd_im, wd_re, wd_im);

    const T nn = wn_re * wn_re + wn_im * wn_im;
    const T dd = wd_re * wd_re + wd_im * wd_im;
    const T den = nn + dd;
    // w_n * conj(w_d)
    const T cr = wn_re * wd_re + wn_im * wd_im;
    const T ci = wn_im * wd_re - wn_re * wd_im;
    out[0] = 2.0 * cr / den;
    out[1] = 2.0 * ci / den;
    out[2] = (nn - dd) / den;
}

// Conformal factor of the induced map of unit round spheres at q:
// lambda = |det m| (1+|z|^2) / (|a z + b|^2 + |c z + d|^2), evaluated
// projectively so both stereographic poles are fine.
double moebius_conformal_factor(const MoebiusMap& m, const double* q);

// Gradient of the conformal factor on the unit sphere, by central
// differences in the stereographic chart (pole swap for |z| > 10).
// Returns the ambient tangent gradient vector at q.
void moebius_factor_gradient(const MoebiusMap& m, const double* q, double* grad_out);

} // namespace mmk

#endif
