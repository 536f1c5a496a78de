#include "moebius.hpp"

#include <cmath>

namespace mmk {

namespace {

using C = std::complex<double>;

// north chart z = (qx + i qy)/(1 - qz); south chart w = (qx - i qy)/(1 + qz)
C to_chart(const double* q, bool south) {
    if (!south) return C(q[0], q[1]) / (1.0 - q[2]);
    return C(q[0], -q[1]) / (1.0 + q[2]);
}

void from_chart(C z, bool south, double* q) {
    const double n = std::norm(z);
    if (!south) {
        q[0] = 2.0 * z.real() / (1.0 + n);
        q[1] = 2.0 * z.imag() / (1.0 + n);
        q[2] = (n - 1.0) / (1.0 + n);
    } else {
        q[0] = 2.0 * z.real() / (1.0 + n);
        q[1] = -2.0 * z.imag() / (1.0 + n);
        q[2] = (1.0 - n) / (1.0 + n);
    }
}

double factor_at_chart(const MoebiusMap& m, C z, bool south) {
    double q[3];
    from_chart(z, south, q);
    return moebius_conformal_factor(m, q);
}

} // namespace

double moebius_conformal_factor(const MoebiusMap& m, const double* q) {
    C zn, zd;
    if (q[2] <= 0.0) {
        zn = C(q[0], q[1]);
        zd = C(1.0 - q[2], 0.0);
    } else {
        zn = C(1.0 + q[2], 0.0);
        zd = C(q[0], -q[1]);
    }
    const C wn = m.a * zn + m.b * zd;
    const C wd = m.c * zn + m.d * zd;
    const double num = std::norm(zn) + std::norm(zd);
    const double den = std::norm(wn) + std::norm(wd);
    if (den < 1e-280) fail(ErrorCode::PoleSwapExhausted, "degenerate Moebius evaluation");
    return std::abs(m.det()) * num / den;
}

void moebius_factor_gradient(const MoebiusMap& m, const double* q, double* grad_out) {
    const bool south = q[2] > 99.0 / 101.0; // |z| > 10 in the north chart
    const C z0 = to_chart(q, south);
    const double rho = 2.0 / (1.0 + std::norm(z0));

    const double h = 1e-5;
    double lx = 0.0, ly = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
        const C dz = (axis == 0) ? C(1, 0) : C(0, 1);
        const auto diff = [&](double step) {
            return (factor_at_chart(m, z0 + step * dz, south) -
                    factor_at_chart(m, z0 - step * dz, south)) /
                   (2.0 * step);
        };
        const double d = (4.0 * diff(h / 2) - diff(h)) / 3.0;
        (axis == 0 ? lx : ly) = d;
    }

    // push chart gradient to the ambient tangent vector
    const double hc = 1e-6;
    double qpx[3], qmx[3], qpy[3], qmy[3];
    from_chart(z0 + C(hc, 0), south, qpx);
    from_chart(z0 - C(hc, 0), south, qmx);
    from_chart(z0 + C(0, hc), south, qpy);
    from_chart(z0 - C(0, hc), south, qmy);
    for (int i = 0; i < 3; ++i) {
        const double ex = (qpx[i] - qmx[i]) / (2.0 * hc);
        const double ey = (qpy[i] - qmy[i]) / (2.0 * hc);
        grad_out[i] = (lx * ex + ly * ey) / (rho * rho);
    }
}

} // namespace mmk
