#ifndef MMK_JET_HPP
#define MMK_JET_HPP

#include <cmath>

namespace mmk {

// Second-order jet of a scalar function of one curve parameter t.
// Stores value and the first two derivatives at t = 0 (true derivatives,
// not Taylor coefficients).
struct Jet2 {
    double v  = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    Jet2() = default;
    Jet2(double value) : v(value) {}
    Jet2(double value, double first, double second) : v(value), d1(first), d2(second) {}
};

inline double value(double x) { return x; }
inline double value(const Jet2& x) { return x.v; }

inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet2 operator+(const Jet2& a, double c) { return {a.v + c, a.d1, a.d2}; }
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return {a.v - c, a.d1, a.d2}; }
inline Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.d1, -a.d2}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet2 operator*(const Jet2& a, double c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double q0 = a.v / b.v;
    const double q1 = (a.d1 - q0 * b.d1) / b.v;
    const double q2 = (a.d2 - q0 * b.d2 - 2.0 * q1 * b.d1) / b.v;
    return {q0, q1, q2};
}
inline Jet2 operator/(const Jet2& a, double c) { return {a.v / c, a.d1 / c, a.d2 / c}; }
inline Jet2 operator/(double c, const Jet2& a) { return Jet2(c) / a; }

inline Jet2& operator+=(Jet2& a, const Jet2& b) { a = a + b; return a; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { a = a - b; return a; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { a = a * b; return a; }

inline Jet2 sqrt(const Jet2& a) {
    const double r0 = std::sqrt(a.v);
    const double r1 = a.d1 / (2.0 * r0);
    const double r2 = (a.d2 - 2.0 * r1 * r1) / (2.0 * r0);
    return {r0, r1, r2};
}

inline Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {s, c * a.d1, c * a.d2 - s * a.d1 * a.d1};
}

inline Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {c, -s * a.d1, -s * a.d2 - c * a.d1 * a.d1};
}

inline Jet2 atan(const Jet2& a) {
    const double w = 1.0 + a.v * a.v;
    return {std::atan(a.v),
            a.d1 / w,
            a.d2 / w - 2.0 * a.v * a.d1 * a.d1 / (w * w)};
}

// Angle of the point (x, y); x and y must not both vanish.
inline Jet2 atan2(const Jet2& y, const Jet2& x) {
    const double D  = x.v * x.v + y.v * y.v;
    const double N  = x.v * y.d1 - y.v * x.d1;
    const double Nd = x.v * y.d2 - y.v * x.d2;
    const double Dd = 2.0 * (x.v * x.d1 + y.v * y.d1);
    return {std::atan2(y.v, x.v),
            N / D,
            (Nd * D - N * Dd) / (D * D)};
}

using std::atan;
using std::atan2;
using std::cos;
using std::sin;
using std::sqrt;

} // namespace mmk

#endif
