#pragma once

#include <cstdint>
#include <vector>

#include "adslf/mat2.hpp"

namespace adslf {

// Square null-coordinate grid [tmin,tmax]^2 with n nodes per axis.  The main
// diagonal x = y passes through the nodes (i,i), which carry the Cauchy data.
struct GridSpec {
    double tmin = -0.5, tmax = 0.5;
    int n = 101;

    double h() const { return (tmax - tmin) / (n - 1); }
    double coord(int i) const { return tmin + i * h(); }
    int center() const { return (n - 1) / 2; }
    bool operator==(const GridSpec& o) const = default;
};

template <class T>
struct Field2 {
    GridSpec g;
    std::vector<T> a;

    Field2() = default;
    explicit Field2(GridSpec gs) : g(gs), a((size_t)gs.n * gs.n) {}

    T& at(int i, int j) { return a[(size_t)j * g.n + i]; }
    const T& at(int i, int j) const { return a[(size_t)j * g.n + i]; }
};

using Mat2Field = Field2<Mat2>;
using SlField = Field2<SlVec>;
using MaskField = Field2<uint8_t>;

// ---------------------------------------------------------------------------
// Finite differences on 1-D lines of a field.  Fourth-order centered stencils
// inside, one-sided fourth-order at the edges; the second-order variants are
// used where the spec pins that order (split Maurer-Cartan residuals,
// harmonicity residual).
// ---------------------------------------------------------------------------

template <class T, class At>
T fd1_line(At f, int i, int n, double h, int order) {
    if (order <= 2) {
        if (i == 0) return (f(0) * -3.0 + f(1) * 4.0 - f(2)) * (0.5 / h);
        if (i == n - 1) return (f(n - 1) * 3.0 - f(n - 2) * 4.0 + f(n - 3)) * (0.5 / h);
        return (f(i + 1) - f(i - 1)) * (0.5 / h);
    }
    const double s = 1.0 / (12.0 * h);
    if (i >= 2 && i <= n - 3)
        return (f(i - 2) - f(i - 1) * 8.0 + f(i + 1) * 8.0 - f(i + 2)) * s;
    if (i == 0)
        return (f(0) * -25.0 + f(1) * 48.0 - f(2) * 36.0 + f(3) * 16.0 - f(4) * 3.0) * s;
    if (i == 1)
        return (f(0) * -3.0 - f(1) * 10.0 + f(2) * 18.0 - f(3) * 6.0 + f(4)) * s;
    if (i == n - 1)
        return (f(n - 1) * 25.0 - f(n - 2) * 48.0 + f(n - 3) * 36.0 - f(n - 4) * 16.0 + f(n - 5) * 3.0) * s;
    // i == n - 2
    return (f(n - 1) * 3.0 + f(n - 2) * 10.0 - f(n - 3) * 18.0 + f(n - 4) * 6.0 - f(n - 5)) * s;
}

template <class T, class At>
T fd2_line(At f, int i, int n, double h, int order) {
    const double s2 = 1.0 / (h * h);
    if (order <= 2) {
        if (i == 0) return (f(0) * 2.0 - f(1) * 5.0 + f(2) * 4.0 - f(3)) * s2;
        if (i == n - 1) return (f(n - 1) * 2.0 - f(n - 2) * 5.0 + f(n - 3) * 4.0 - f(n - 4)) * s2;
        return (f(i - 1) - f(i) * 2.0 + f(i + 1)) * s2;
    }
    const double s = s2 / 12.0;
    if (i >= 2 && i <= n - 3)
        return (f(i - 2) * -1.0 + f(i - 1) * 16.0 - f(i) * 30.0 + f(i + 1) * 16.0 - f(i + 2)) * s;
    if (i == 0)
        return (f(0) * 45.0 - f(1) * 154.0 + f(2) * 214.0 - f(3) * 156.0 + f(4) * 61.0 - f(5) * 10.0) * s;
    if (i == 1)
        return (f(0) * 10.0 - f(1) * 15.0 - f(2) * 4.0 + f(3) * 14.0 - f(4) * 6.0 + f(5)) * s;
    if (i == n - 1)
        return (f(n - 1) * 45.0 - f(n - 2) * 154.0 + f(n - 3) * 214.0 - f(n - 4) * 156.0 + f(n - 5) * 61.0 -
                f(n - 6) * 10.0) * s;
    // i == n - 2
    return (f(n - 1) * 10.0 - f(n - 2) * 15.0 - f(n - 3) * 4.0 + f(n - 4) * 14.0 - f(n - 5) * 6.0 + f(n - 6)) * s;
}

template <class T>
T fd_dx(const Field2<T>& f, int i, int j, int order = 4) {
    return fd1_line<T>([&](int k) { return f.at(k, j); }, i, f.g.n, f.g.h(), order);
}
template <class T>
T fd_dy(const Field2<T>& f, int i, int j, int order = 4) {
    return fd1_line<T>([&](int k) { return f.at(i, k); }, j, f.g.n, f.g.h(), order);
}
template <class T>
T fd_dxx(const Field2<T>& f, int i, int j, int order = 4) {
    return fd2_line<T>([&](int k) { return f.at(k, j); }, i, f.g.n, f.g.h(), order);
}
template <class T>
T fd_dyy(const Field2<T>& f, int i, int j, int order = 4) {
    return fd2_line<T>([&](int k) { return f.at(i, k); }, j, f.g.n, f.g.h(), order);
}
template <class T>
T fd_dxy(const Field2<T>& f, int i, int j, int order = 4) {
    // d/dy applied to the d/dx line values
    return fd1_line<T>([&](int k) { return fd_dx(f, i, k, order); }, j, f.g.n, f.g.h(), order);
}

// Quartic Lagrange interpolation along a grid line; x in grid coordinates.
// Used to supply Gauss-point values to the Lie-group integrator.
template <class T, class At>
T interp_line(At f, int n, double tmin, double h, double x) {
    int c = (int)std::floor((x - tmin) / h + 0.5);
    int lo = c - 2;
    if (lo < 0) lo = 0;
    if (lo > n - 5) lo = n - 5;
    const double s = (x - (tmin + lo * h)) / h;  // in [roughly 0..4]
    T out{};
    for (int k = 0; k < 5; ++k) {
        double w = 1.0;
        for (int m = 0; m < 5; ++m)
            if (m != k) w *= (s - m) / (k - m);
        out += f(lo + k) * w;
    }
    return out;
}

}  // namespace adslf
