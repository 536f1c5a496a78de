#ifndef MMK_ALGEBRA_HPP
#define MMK_ALGEBRA_HPP

#include <array>
#include <cmath>

namespace mmk {

// Multiplication table of the octonion basis {i_0, ..., i_7}: i_0 is the
// unit and i_m i_n = -delta_mn i_0 + eps_mnk i_k for imaginary units, where
// eps is the completely antisymmetric tensor with value 1 on the triples
// (1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5).
// The restrictions to indices {0,1} and {0,1,2,3} are the complex and
// quaternion tables, so one table drives all three algebras.
struct AlgebraTable {
    std::array<std::array<int, 8>, 8> index;
    std::array<std::array<double, 8>, 8> sign;
};

const AlgebraTable& octonion_table();

// out = x * y in the division algebra of dimension d (2, 4 or 8).
// Aliasing of out with x or y is allowed.
template <class T>
void alg_mul(int d, const T* x, const T* y, T* out) {
    const AlgebraTable& t = octonion_table();
    T acc[8];
    for (int k = 0; k < d; ++k) acc[k] = T(0.0);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            const int k = t.index[m][n];
            acc[k] += x[m] * y[n] * t.sign[m][n];
        }
    for (int k = 0; k < d; ++k) out[k] = acc[k];
}

template <class T>
void alg_conj(int d, const T* x, T* out) {
    out[0] = x[0];
    for (int k = 1; k < d; ++k) out[k] = -x[k];
}

struct Quaternion {
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0;

    double norm() const { return std::sqrt(a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3); }
    Quaternion conj() const { return {a0, -a1, -a2, -a3}; }
};

inline Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    double a[4] = {x.a0, x.a1, x.a2, x.a3}, b[4] = {y.a0, y.a1, y.a2, y.a3}, c[4];
    alg_mul(4, a, b, c);
    return {c[0], c[1], c[2], c[3]};
}

inline Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    return {x.a0 - y.a0, x.a1 - y.a1, x.a2 - y.a2, x.a3 - y.a3};
}

struct Octonion {
    std::array<double, 8> a{};

    static Octonion unit(int k) {
        Octonion o;
        o.a[k] = 1.0;
        return o;
    }
    double norm() const {
        double s = 0;
        for (double x : a) s += x * x;
        return std::sqrt(s);
    }
    Octonion conj() const {
        Octonion o = *this;
        for (int k = 1; k < 8; ++k) o.a[k] = -o.a[k];
        return o;
    }
};

inline Octonion operator*(const Octonion& x, const Octonion& y) {
    Octonion o;
    alg_mul(8, x.a.data(), y.a.data(), o.a.data());
    return o;
}

inline Octonion operator-(const Octonion& x, const Octonion& y) {
    Octonion o;
    for (int k = 0; k < 8; ++k) o.a[k] = x.a[k] - y.a[k];
    return o;
}

inline Octonion octonion_mul(const Octonion& x, const Octonion& y) { return x * y; }

} // namespace mmk

#endif
