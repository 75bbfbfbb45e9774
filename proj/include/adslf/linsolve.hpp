#pragma once

#include <cmath>
#include <vector>

namespace adslf {

// Dense Gaussian elimination with partial pivoting, in place.
// a is row-major n x n, b the right-hand side; solution lands in b.
// Returns false when the pivot falls below piv_tol * row scale.
inline bool gauss_solve(std::vector<double>& a, std::vector<double>& b, int n,
                        double piv_tol = 1e-13) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(a[(size_t)k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            const double v = std::fabs(a[(size_t)r * n + k]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < piv_tol) return false;
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(a[(size_t)k * n + c], a[(size_t)piv * n + c]);
            std::swap(b[k], b[piv]);
        }
        const double d = a[(size_t)k * n + k];
        for (int r = k + 1; r < n; ++r) {
            const double m = a[(size_t)r * n + k] / d;
            if (m == 0.0) continue;
            for (int c = k; c < n; ++c) a[(size_t)r * n + c] -= m * a[(size_t)k * n + c];
            b[r] -= m * b[k];
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        double s = b[k];
        for (int c = k + 1; c < n; ++c) s -= a[(size_t)k * n + c] * b[c];
        b[k] = s / a[(size_t)k * n + k];
    }
    return true;
}

}  // namespace adslf
