#pragma once

#include <array>
#include <cmath>

#include "adslf/errors.hpp"

namespace adslf {

// Real 2x2 matrices model R^{2,2} with the form <X,Y> = -1/2 tr(X adj(Y)),
// so that <X,X> = -det X.  The traceless part models Minkowski 3-space in
// the basis (e1,e2,e3) with e1 timelike.
struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    constexpr Mat2() = default;
    constexpr Mat2(double m11, double m12, double m21, double m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {}

    constexpr Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    constexpr Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    constexpr Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
    constexpr Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
    Mat2& operator-=(const Mat2& o) { return *this = *this - o; }
    Mat2& operator*=(double s) { return *this = *this * s; }

    constexpr double det() const { return a11 * a22 - a12 * a21; }
    constexpr double trace() const { return a11 + a22; }
    constexpr Mat2 adjugate() const { return {a22, -a12, -a21, a11}; }
    constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }

    double norm() const {  // Frobenius
        return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22);
    }
    double max_abs() const {
        return std::max(std::max(std::fabs(a11), std::fabs(a12)), std::max(std::fabs(a21), std::fabs(a22)));
    }
};

inline constexpr Mat2 operator*(double s, const Mat2& m) { return m * s; }

inline Mat2 inverse(const Mat2& m, double tol = 1e-14) {
    const double d = m.det();
    if (std::fabs(d) < tol) throw SingularMatrix("inverse: |det| below tolerance");
    return m.adjugate() * (1.0 / d);
}

// Basis of gl(2,R): e0 = I, (e1,e2,e3) spans sl(2,R).
inline constexpr Mat2 E0{1, 0, 0, 1};
inline constexpr Mat2 E1{0, -1, 1, 0};
inline constexpr Mat2 E2{0, 1, 1, 0};
inline constexpr Mat2 E3{-1, 0, 0, 1};

// Nilpotent raising/lowering elements, Ep*Ep = Em*Em = 0.
// In the (e1,e2,e3) coordinates Ep = (e2 - e1)/2 and Em = (e2 + e1)/2.
inline constexpr Mat2 Ep{0, 1, 0, 0};
inline constexpr Mat2 Em{0, 0, 1, 0};

// sl(2,R) element in coordinates: X = v1*e1 + v2*e2 + v3*e3.
struct SlVec {
    double v1 = 0, v2 = 0, v3 = 0;

    constexpr SlVec() = default;
    constexpr SlVec(double x1, double x2, double x3) : v1(x1), v2(x2), v3(x3) {}

    constexpr SlVec operator+(const SlVec& o) const { return {v1 + o.v1, v2 + o.v2, v3 + o.v3}; }
    constexpr SlVec operator-(const SlVec& o) const { return {v1 - o.v1, v2 - o.v2, v3 - o.v3}; }
    constexpr SlVec operator-() const { return {-v1, -v2, -v3}; }
    constexpr SlVec operator*(double s) const { return {v1 * s, v2 * s, v3 * s}; }
    SlVec& operator+=(const SlVec& o) { return *this = *this + o; }
    SlVec& operator-=(const SlVec& o) { return *this = *this - o; }

    double norm() const { return std::sqrt(v1 * v1 + v2 * v2 + v3 * v3); }  // Euclidean, for residuals
};

inline constexpr SlVec operator*(double s, const SlVec& v) { return v * s; }

inline constexpr SlVec SL_E1{1, 0, 0};
inline constexpr SlVec SL_E2{0, 1, 0};
inline constexpr SlVec SL_E3{0, 0, 1};

// Coordinate round trip with the traceless embedding; exact by construction.
inline constexpr Mat2 to_mat(const SlVec& x) {
    return {-x.v3, -x.v1 + x.v2, x.v1 + x.v2, x.v3};
}
inline constexpr SlVec sl_part(const Mat2& m) {
    return {(m.a21 - m.a12) / 2, (m.a21 + m.a12) / 2, (m.a22 - m.a11) / 2};
}

// <X,Y> = -1/2 tr(X adj(Y)).  Satisfies <X,X> = -det X exactly.
inline constexpr double gl_inner(const Mat2& x, const Mat2& y) {
    return -0.5 * (x.a11 * y.a22 - x.a12 * y.a21 - x.a21 * y.a12 + x.a22 * y.a11);
}

// Restriction to sl(2,R): signature (-,+,+) with e1 timelike.
inline constexpr double sl_inner(const SlVec& x, const SlVec& y) {
    return -x.v1 * y.v1 + x.v2 * y.v2 + x.v3 * y.v3;
}

// [X,Y] = 2 (X x Y) with the bracket table [e1,e2]=2e3, [e2,e3]=-2e1, [e3,e1]=2e2.
inline constexpr SlVec bracket(const SlVec& x, const SlVec& y) {
    return {-2 * (x.v2 * y.v3 - x.v3 * y.v2),
            2 * (x.v3 * y.v1 - x.v1 * y.v3),
            2 * (x.v1 * y.v2 - x.v2 * y.v1)};
}

// Adjoint action g X g^-1.  Division by det makes the result independent of
// the scale of g, so membership invariants survive determinant drift.
inline SlVec ad_action(const Mat2& g, const SlVec& x, double tol = 1e-12) {
    const double d = g.det();
    if (std::fabs(d) < tol) throw SingularMatrix("ad_action: singular matrix");
    const Mat2 m = g * to_mat(x) * g.adjugate() * (1.0 / d);
    return sl_part(m);
}

inline Mat2 ad_action(const Mat2& g, const Mat2& x, double tol = 1e-12) {
    const double d = g.det();
    if (std::fabs(d) < tol) throw SingularMatrix("ad_action: singular matrix");
    return g * x * g.adjugate() * (1.0 / d);
}

// exp on sl(2,R) in closed form.  With d = det X = v1^2 - v2^2 - v3^2,
//   exp X = c0(d) I + c1(d) X,  c0 = cos(sqrt d), c1 = sinc(sqrt d),
// continued through d <= 0 by the entire extensions (cosh/sinh branch).
// Near d = 0 the truncated power series avoids cancellation.
Mat2 exp_sl(const SlVec& x);

// Residuals of the four bracket/metric identities for X, Y and Z with Z
// orthogonal to X and Y:
//   (1) <X,[X,Y]> = 0
//   (2) <[X,Y],[X,Y]> = 4(<X,Y>^2 - <X,X><Y,Y>)
//   (3) [[Z,X],[Z,Y]] = -4<Z,Z>[X,Y]
//   (4) <[Z,X],[Z,Y]> = -4<Z,Z><X,Y>
struct BracketIdentityResiduals {
    double r1 = 0, r2 = 0, r3 = 0, r4 = 0;
    double max() const { return std::max(std::max(r1, r2), std::max(r3, r4)); }
};
BracketIdentityResiduals bracket_identities_check(const SlVec& x, const SlVec& y, const SlVec& z,
                                                  double ortho_tol = 1e-9);

// Membership helpers.
inline bool in_h2(const SlVec& v, double tol = 1e-9) {
    return std::fabs(sl_inner(v, v) + 1.0) <= tol && v.v1 > 0;
}
inline bool in_ads(const Mat2& m, double tol = 1e-9) {
    return std::fabs(m.det() - 1.0) <= tol;
}

struct H2Point {
    SlVec v;
    bool valid(double tol = 1e-9) const { return in_h2(v, tol); }
};

struct AdsPoint {
    Mat2 m;
    bool valid(double tol = 1e-9) const { return in_ads(m, tol); }
};

// Lower-unipotent * upper-triangular factorization of a single matrix,
// defined when |P11| is away from zero ("big cell").
struct BigCellFactors {
    Mat2 lower;  // [[1,0],[l,1]]
    Mat2 upper;  // [[P11,P12],[0,detP/P11]]
};
BigCellFactors big_cell_factor(const Mat2& p, double tol = 1e-12);

}  // namespace adslf
