#pragma once

#include <optional>
#include <vector>

#include "adslf/mat2.hpp"

namespace adslf {

// Finitely truncated Laurent polynomial in the loop parameter with Mat2
// coefficients.  Degrees run over [dmin, dmax] with dmin <= 0 <= dmax.
struct LaurentLoop {
    int dmin = 0;
    std::vector<Mat2> c;  // c[k] is the coefficient of degree dmin + k

    LaurentLoop() : c(1) {}
    LaurentLoop(int lo, int hi) : dmin(lo), c((size_t)(hi - lo + 1)) {}

    int dmax() const { return dmin + (int)c.size() - 1; }
    bool has(int d) const { return d >= dmin && d <= dmax(); }
    const Mat2& coeff(int d) const {
        static constexpr Mat2 zero{};
        return has(d) ? c[(size_t)(d - dmin)] : zero;
    }
    Mat2& at(int d) { return c[(size_t)(d - dmin)]; }

    static LaurentLoop identity() {
        LaurentLoop l;
        l.c[0] = E0;
        return l;
    }
    static LaurentLoop monomial(const Mat2& m, int d) {
        LaurentLoop l(std::min(d, 0), std::max(d, 0));
        l.at(d) = m;
        return l;
    }

    Mat2 eval(double lambda) const {
        Mat2 s{};
        for (int d = dmin; d <= dmax(); ++d) s += coeff(d) * std::pow(lambda, d);
        return s;
    }
    double norm() const {  // sum of coefficient Frobenius norms
        double s = 0;
        for (const auto& m : c) s += m.norm();
        return s;
    }
    // drop all-zero outer degrees but keep degree 0 present
    void tighten(double eps = 0.0) {
        int lo = dmin, hi = dmax();
        while (lo < 0 && coeff(lo).max_abs() <= eps) ++lo;
        while (hi > 0 && coeff(hi).max_abs() <= eps) --hi;
        if (lo != dmin || hi != dmax()) {
            LaurentLoop t(lo, hi);
            for (int d = lo; d <= hi; ++d) t.at(d) = coeff(d);
            *this = std::move(t);
        }
    }
};

inline LaurentLoop loop_add(const LaurentLoop& a, const LaurentLoop& b) {
    LaurentLoop r(std::min(a.dmin, b.dmin), std::max(a.dmax(), b.dmax()));
    for (int d = r.dmin; d <= r.dmax(); ++d) r.at(d) = a.coeff(d) + b.coeff(d);
    return r;
}
inline LaurentLoop loop_scale(const LaurentLoop& a, double s) {
    LaurentLoop r = a;
    for (auto& m : r.c) m *= s;
    return r;
}

// Exact product; degree ranges add.  Throws TruncationOverflow when the
// result would exceed [-max_order, max_order].
LaurentLoop loop_mul(const LaurentLoop& a, const LaurentLoop& b, int max_order = 8);

// Saturating product for solver internals: degrees beyond [-nmax, nmax] are
// dropped (the truncation error of the method, not an error condition).
LaurentLoop mul_trunc(const LaurentLoop& a, const LaurentLoop& b, int nmax);

// exp of a small loop by the truncated series (terms until negligible).
LaurentLoop exp_trunc(const LaurentLoop& a, int nmax, double tail_tol = 1e-18);

// Inverse of a truncated loop via Newton iteration  Z <- Z(2I - AZ),
// seeded with the inverse of the degree-0 coefficient.
LaurentLoop inverse_trunc(const LaurentLoop& a, int nmax, double tol = 1e-14);

// ---------------------------------------------------------------------------
// Birkhoff factorization P = Hm * Hp on truncated loops.
//
// Normalization ("big cell"): Hm carries degrees [-N, 0] with lower-unipotent
// degree-0 part, Hp carries [0, N] with upper-triangular degree-0 part.  The
// coefficients solve the square nonlinear system coeffs(Hm*Hp - P) = 0 by a
// linear splitting followed by Newton passes.
// ---------------------------------------------------------------------------
struct BirkhoffFactors {
    LaurentLoop hm, hp;
    int iterations = 0;
    double residual = 0;
};

BirkhoffFactors birkhoff_factor(const LaurentLoop& p, int order, double tol = 1e-13,
                                int maxit = 50, const BirkhoffFactors* seed = nullptr);

// ---------------------------------------------------------------------------
// Twisted loops.  The extended frames of the harmonic-map construction obey
// the symmetric-space grading: even degrees lie in span{I, e1}, odd degrees
// in span{e2, e3}.  Both two-planes are closed under the multiplications
// below, which makes a twisted loop a band of 2-vectors (a, b):
//   even degree:  a I  + b e1        odd degree:  a e2 + b e3
// with the convolution rule (z, w complex shorthands a + ib):
//   z * w            when the left slot has even degree,
//   z * conj(w)      when the left slot has odd degree.
// ---------------------------------------------------------------------------
struct TwistedLoop {
    int nmax = 0;                 // band [-nmax, nmax]
    std::vector<double> re, im;   // index d + nmax

    TwistedLoop() : re(1), im(1) {}
    explicit TwistedLoop(int n) : nmax(n), re(2 * (size_t)n + 1), im(2 * (size_t)n + 1) {}

    double& r(int d) { return re[(size_t)(d + nmax)]; }
    double& i(int d) { return im[(size_t)(d + nmax)]; }
    double r(int d) const { return d >= -nmax && d <= nmax ? re[(size_t)(d + nmax)] : 0.0; }
    double i(int d) const { return d >= -nmax && d <= nmax ? im[(size_t)(d + nmax)] : 0.0; }

    static TwistedLoop identity(int n) {
        TwistedLoop t(n);
        t.r(0) = 1.0;
        return t;
    }
    Mat2 eval(double lambda) const;
    double max_abs() const;
};

// Projection of a twisted Mat2 loop; *offgrade reports the dropped mass
// (nonzero only if the input violates the grading).
TwistedLoop to_twisted(const LaurentLoop& a, int nmax, double* offgrade = nullptr);
LaurentLoop from_twisted(const TwistedLoop& t);

TwistedLoop tmul(const TwistedLoop& a, const TwistedLoop& b, int nmax);
TwistedLoop texp(const TwistedLoop& a, int nmax, double tail_tol = 1e-18);

// Twisted Birkhoff factorization Phi = Hm * Hp with Hm = I + (degrees < 0)
// and Hp supported on degrees >= 0 (degree-0 part in span{I, e1}).  This is
// the normalization compatible with the grading: the residual degree-0
// freedom commutes with e1 and therefore never moves Ad_F e1.
struct TwistedBirkhoff {
    TwistedLoop hm, hp;
    int iterations = 0;
    double residual = 0;
};

TwistedBirkhoff birkhoff_twisted(const TwistedLoop& phi, double tol = 1e-13, int maxit = 50,
                                 const TwistedBirkhoff* seed = nullptr);

}  // namespace adslf
