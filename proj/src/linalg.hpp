#ifndef MMK_LINALG_HPP
#define MMK_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace mmk {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec& axpy(Vec& y, double c, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
    return y;
}

inline Vec scaled(const Vec& a, double c) {
    Vec r(a);
    for (double& x : r) x *= c;
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec normalized(const Vec& a) { return scaled(a, 1.0 / norm(a)); }

// Component of w orthogonal to the unit radial direction q/|q|.
inline Vec tangential_part(const Vec& w, const Vec& q) {
    const double c = dot(w, q) / dot(q, q);
    Vec r(w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * q[i];
    return r;
}

// Cyclic Jacobi diagonalization of a symmetric n x n matrix (n small).
// On return evals is ascending and vecs[k] is the unit eigenvector of
// evals[k]. Converges when the off-diagonal Frobenius mass drops below
// 1e-14 relative to the matrix norm.
struct EigenSym {
    std::vector<double> evals;
    std::vector<Vec> vecs;
};

inline EigenSym jacobi_eigen(std::vector<Vec> A) {
    const int n = static_cast<int>(A.size());
    std::vector<Vec> V(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) V[i][i] = 1.0;

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale += A[i][j] * A[i][j];
    scale = std::sqrt(scale);
    const double stop = 1e-14 * std::max(1.0, scale);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * A[i][j] * A[i][j];
        if (std::sqrt(off) < stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(A[p][q]) < 1e-300) continue;
                const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double Apq = A[p][q];
                A[p][p] -= t * Apq;
                A[q][q] += t * Apq;
                A[p][q] = A[q][p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double Arp = A[r][p], Arq = A[r][q];
                        A[r][p] = A[p][r] = Arp - s * (Arq + tau * Arp);
                        A[r][q] = A[q][r] = Arq + s * (Arp - tau * Arq);
                    }
                    const double Vrp = V[r][p], Vrq = V[r][q];
                    V[r][p] = Vrp - s * (Vrq + tau * Vrp);
                    V[r][q] = Vrq + s * (Vrp - tau * Vrq);
                }
            }
        }
    }

    EigenSym out;
    out.evals.resize(n);
    out.vecs.assign(n, Vec(n, 0.0));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (A[order[j]][order[j]] < A[order[i]][order[i]]) std::swap(order[i], order[j]);
    for (int k = 0; k < n; ++k) {
        const int c = order[k];
        out.evals[k] = A[c][c];
        for (int r = 0; r < n; ++r) out.vecs[k][r] = V[r][c];
    }
    return out;
}

// Determinant of an n x n matrix given by rows (n <= 4 is all we need,
// but the elimination works for any small n).
inline double det(std::vector<Vec> M) {
    const int n = static_cast<int>(M.size());
    double d = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
        if (std::fabs(M[piv][c]) < 1e-300) return 0.0;
        if (piv != c) { std::swap(M[piv], M[c]); d = -d; }
        d *= M[c][c];
        for (int r = c + 1; r < n; ++r) {
            const double f = M[r][c] / M[c][c];
            for (int k = c; k < n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    return d;
}

} // namespace mmk

#endif
