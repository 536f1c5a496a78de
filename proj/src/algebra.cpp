#include "algebra.hpp"

namespace mmk {

namespace {

AlgebraTable build_table() {
    AlgebraTable t;
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n) {
            t.index[m][n] = 0;
            t.sign[m][n] = 0.0;
        }
    for (int n = 0; n < 8; ++n) {
        t.index[0][n] = n;
        t.sign[0][n] = 1.0;
        t.index[n][0] = n;
        t.sign[n][0] = 1.0;
    }
    for (int m = 1; m < 8; ++m) {
        t.index[m][m] = 0;
        t.sign[m][m] = -1.0;
    }
    const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                               {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (const auto& tr : triples) {
        const int a = tr[0], b = tr[1], c = tr[2];
        // even permutations carry +1, odd carry -1
        const int even[3][2] = {{a, b}, {b, c}, {c, a}};
        const int thirds[3] = {c, a, b};
        for (int i = 0; i < 3; ++i) {
            const int m = even[i][0], n = even[i][1], k = thirds[i];
            t.index[m][n] = k;
            t.sign[m][n] = 1.0;
            t.index[n][m] = k;
            t.sign[n][m] = -1.0;
        }
    }
    return t;
}

} // namespace

const AlgebraTable& octonion_table() {
    static const AlgebraTable table = build_table();
    return table;
}

} // namespace mmk
