#include "adslf/loop.hpp"

#include <cstring>

#include "adslf/linsolve.hpp"

namespace adslf {

LaurentLoop loop_mul(const LaurentLoop& a, const LaurentLoop& b, int max_order) {
    const int lo = a.dmin + b.dmin;
    const int hi = a.dmax() + b.dmax();
    if (lo < -max_order || hi > max_order)
        throw TruncationOverflow("loop_mul: product degree range exceeds configured order");
    LaurentLoop r(std::min(lo, 0), std::max(hi, 0));
    for (int da = a.dmin; da <= a.dmax(); ++da)
        for (int db = b.dmin; db <= b.dmax(); ++db)
            r.at(da + db) += a.coeff(da) * b.coeff(db);
    return r;
}

LaurentLoop mul_trunc(const LaurentLoop& a, const LaurentLoop& b, int nmax) {
    LaurentLoop r(std::max(a.dmin + b.dmin, -nmax), std::min(a.dmax() + b.dmax(), nmax));
    if (r.dmin > 0 || r.dmax() < 0) r = LaurentLoop(std::min(r.dmin, 0), std::max(r.dmax(), 0));
    for (int da = a.dmin; da <= a.dmax(); ++da)
        for (int db = b.dmin; db <= b.dmax(); ++db) {
            const int d = da + db;
            if (d < -nmax || d > nmax) continue;
            r.at(d) += a.coeff(da) * b.coeff(db);
        }
    return r;
}

LaurentLoop exp_trunc(const LaurentLoop& a, int nmax, double tail_tol) {
    LaurentLoop sum = LaurentLoop::identity();
    LaurentLoop term = LaurentLoop::identity();
    for (int k = 1; k <= 64; ++k) {
        term = loop_scale(mul_trunc(term, a, nmax), 1.0 / k);
        sum = loop_add(sum, term);
        if (term.norm() < tail_tol) break;
    }
    return sum;
}

LaurentLoop inverse_trunc(const LaurentLoop& a, int nmax, double tol) {
    LaurentLoop z = LaurentLoop::monomial(inverse(a.coeff(0)), 0);
    for (int it = 0; it < 64; ++it) {
        // Z <- Z + Z(I - AZ)
        LaurentLoop az = mul_trunc(a, z, nmax);
        LaurentLoop err = loop_add(LaurentLoop::identity(), loop_scale(az, -1.0));
        z = loop_add(z, mul_trunc(z, err, nmax));
        if (err.norm() < tol) break;
    }
    return z;
}

// --- general Birkhoff --------------------------------------------------------

namespace {

// unknown layout: Hm: [l21][4 per degree -1..-N]; Hp: [u11,u12,u22][4 per degree 1..N]
struct BkLayout {
    int order;
    int n_unknowns() const { return 8 * order + 4; }
    int n_equations() const { return 4 * (2 * order + 1); }
};

void unpack(const std::vector<double>& u, int order, LaurentLoop& hm, LaurentLoop& hp) {
    hm = LaurentLoop(-order, 0);
    hp = LaurentLoop(0, order);
    int k = 0;
    hm.at(0) = {1, 0, u[k], 1};
    ++k;
    for (int d = -1; d >= -order; --d) {
        hm.at(d) = {u[k], u[k + 1], u[k + 2], u[k + 3]};
        k += 4;
    }
    hp.at(0) = {u[k], u[k + 1], 0, u[k + 2]};
    k += 3;
    for (int d = 1; d <= order; ++d) {
        hp.at(d) = {u[k], u[k + 1], u[k + 2], u[k + 3]};
        k += 4;
    }
}

void scatter(const LaurentLoop& l, int order, std::vector<double>& out) {
    for (int d = -order; d <= order; ++d) {
        const Mat2& m = l.coeff(d);
        const int base = 4 * (d + order);
        out[base] += m.a11;
        out[base + 1] += m.a12;
        out[base + 2] += m.a21;
        out[base + 3] += m.a22;
    }
}

}  // namespace

BirkhoffFactors birkhoffNewton_general(const LaurentLoop& p, int order, double tol, int maxit,
                                       const BirkhoffFactors* seed) {
    const BkLayout lay{order};
    const int nu = lay.n_unknowns();
    const int ne = lay.n_equations();
    const double scale = std::max(1.0, p.norm());

    std::vector<double> u(nu, 0.0);
    if (seed) {
        // pack the seed
        int k = 0;
        u[k++] = seed->hm.coeff(0).a21;
        for (int d = -1; d >= -order; --d) {
            const Mat2& m = seed->hm.coeff(d);
            u[k++] = m.a11;
            u[k++] = m.a12;
            u[k++] = m.a21;
            u[k++] = m.a22;
        }
        const Mat2& p0 = seed->hp.coeff(0);
        u[k++] = p0.a11;
        u[k++] = p0.a12;
        u[k++] = p0.a22;
        for (int d = 1; d <= order; ++d) {
            const Mat2& m = seed->hp.coeff(d);
            u[k++] = m.a11;
            u[k++] = m.a12;
            u[k++] = m.a21;
            u[k++] = m.a22;
        }
    } else {
        // linear splitting around the degree-0 big-cell factorization
        const BigCellFactors f0 = big_cell_factor(p.coeff(0));
        int k = 0;
        u[k++] = f0.lower.a21;
        for (int d = -1; d >= -order; --d) {
            const Mat2 m = p.coeff(d);
            u[k++] = m.a11;
            u[k++] = m.a12;
            u[k++] = m.a21;
            u[k++] = m.a22;
        }
        u[k++] = f0.upper.a11;
        u[k++] = f0.upper.a12;
        u[k++] = f0.upper.a22;
        for (int d = 1; d <= order; ++d) {
            const Mat2 m = p.coeff(d);
            u[k++] = m.a11;
            u[k++] = m.a12;
            u[k++] = m.a21;
            u[k++] = m.a22;
        }
    }

    LaurentLoop hm, hp;
    std::vector<double> res(ne), jac((size_t)ne * nu), col(ne), du(ne);

    for (int it = 1; it <= maxit; ++it) {
        unpack(u, order, hm, hp);
        std::fill(res.begin(), res.end(), 0.0);
        scatter(mul_trunc(hm, hp, order), order, res);
        {
            std::vector<double> pv(ne, 0.0);
            scatter(p, order, pv);
            for (int i = 0; i < ne; ++i) res[i] -= pv[i];
        }
        double rmax = 0;
        for (double v : res) rmax = std::max(rmax, std::fabs(v));
        if (rmax <= tol * scale) {
            BirkhoffFactors out;
            out.hm = hm;
            out.hp = hp;
            out.iterations = it - 1;
            out.residual = rmax;
            return out;
        }

        // Jacobian columns: d(Hm Hp) = dHm * Hp + Hm * dHp, assembled from
        // single-entry basis loops.
        std::fill(jac.begin(), jac.end(), 0.0);
        int ucol = 0;
        auto add_col = [&](const LaurentLoop& dl, bool left) {
            std::fill(col.begin(), col.end(), 0.0);
            scatter(left ? mul_trunc(dl, hp, order) : mul_trunc(hm, dl, order), order, col);
            for (int i = 0; i < ne; ++i) jac[(size_t)i * nu + ucol] = col[i];
            ++ucol;
        };
        add_col(LaurentLoop::monomial(Mat2{0, 0, 1, 0}, 0), true);
        for (int d = -1; d >= -order; --d) {
            add_col(LaurentLoop::monomial(Mat2{1, 0, 0, 0}, d), true);
            add_col(LaurentLoop::monomial(Mat2{0, 1, 0, 0}, d), true);
            add_col(LaurentLoop::monomial(Mat2{0, 0, 1, 0}, d), true);
            add_col(LaurentLoop::monomial(Mat2{0, 0, 0, 1}, d), true);
        }
        add_col(LaurentLoop::monomial(Mat2{1, 0, 0, 0}, 0), false);
        add_col(LaurentLoop::monomial(Mat2{0, 1, 0, 0}, 0), false);
        add_col(LaurentLoop::monomial(Mat2{0, 0, 0, 1}, 0), false);
        for (int d = 1; d <= order; ++d) {
            add_col(LaurentLoop::monomial(Mat2{1, 0, 0, 0}, d), false);
            add_col(LaurentLoop::monomial(Mat2{0, 1, 0, 0}, d), false);
            add_col(LaurentLoop::monomial(Mat2{0, 0, 1, 0}, d), false);
            add_col(LaurentLoop::monomial(Mat2{0, 0, 0, 1}, d), false);
        }

        du = res;
        if (!gauss_solve(jac, du, nu, 1e-13 * scale))
            throw NotInBigCell("birkhoff_factor: singular correction system");
        for (int i = 0; i < nu; ++i) u[i] -= du[i];
    }
    throw NoConvergence("birkhoff_factor: Newton iteration ceiling reached");
}

BirkhoffFactors birkhoff_factor(const LaurentLoop& p, int order, double tol, int maxit,
                                const BirkhoffFactors* seed) {
    if (p.dmin < -order || p.dmax() > order)
        throw TruncationOverflow("birkhoff_factor: input exceeds truncation order");
    return birkhoffNewton_general(p, order, tol, maxit, seed);
}

// --- twisted loops -----------------------------------------------------------

Mat2 TwistedLoop::eval(double lambda) const {
    Mat2 s{};
    for (int d = -nmax; d <= nmax; ++d) {
        const double p = std::pow(lambda, d);
        const double a = r(d), b = i(d);
        if (a == 0.0 && b == 0.0) continue;
        if ((d & 1) == 0)
            s += (E0 * a + E1 * b) * p;
        else
            s += (E2 * a + E3 * b) * p;
    }
    return s;
}

double TwistedLoop::max_abs() const {
    double m = 0;
    for (size_t k = 0; k < re.size(); ++k)
        m = std::max(m, std::max(std::fabs(re[k]), std::fabs(im[k])));
    return m;
}

TwistedLoop to_twisted(const LaurentLoop& a, int nmax, double* offgrade) {
    TwistedLoop t(nmax);
    double off = 0;
    for (int d = a.dmin; d <= a.dmax(); ++d) {
        const Mat2& m = a.coeff(d);
        if (d < -nmax || d > nmax) {
            off += m.norm();
            continue;
        }
        const double alpha = 0.5 * (m.a11 + m.a22);
        const SlVec s = sl_part(m);
        if ((d & 1) == 0) {
            t.r(d) = alpha;
            t.i(d) = s.v1;
            off += std::fabs(s.v2) + std::fabs(s.v3);
        } else {
            t.r(d) = s.v2;
            t.i(d) = s.v3;
            off += std::fabs(alpha) + std::fabs(s.v1);
        }
    }
    if (offgrade) *offgrade = off;
    return t;
}

LaurentLoop from_twisted(const TwistedLoop& t) {
    LaurentLoop l(-t.nmax, t.nmax);
    for (int d = -t.nmax; d <= t.nmax; ++d) {
        if ((d & 1) == 0)
            l.at(d) = E0 * t.r(d) + E1 * t.i(d);
        else
            l.at(d) = E2 * t.r(d) + E3 * t.i(d);
    }
    return l;
}

TwistedLoop tmul(const TwistedLoop& a, const TwistedLoop& b, int nmax) {
    TwistedLoop out(nmax);
    for (int da = -a.nmax; da <= a.nmax; ++da) {
        const double ar = a.r(da), ai = a.i(da);
        if (ar == 0.0 && ai == 0.0) continue;
        const bool odd = (da & 1) != 0;
        const int lo = std::max(-b.nmax, -nmax - da);
        const int hi = std::min(b.nmax, nmax - da);
        for (int db = lo; db <= hi; ++db) {
            double br = b.r(db), bi = b.i(db);
            if (br == 0.0 && bi == 0.0) continue;
            if (odd) bi = -bi;  // left odd slot conjugates the right factor
            out.r(da + db) += ar * br - ai * bi;
            out.i(da + db) += ar * bi + ai * br;
        }
    }
    return out;
}

TwistedLoop texp(const TwistedLoop& a, int nmax, double tail_tol) {
    TwistedLoop sum = TwistedLoop::identity(nmax);
    TwistedLoop term = TwistedLoop::identity(nmax);
    for (int k = 1; k <= 64; ++k) {
        term = tmul(term, a, nmax);
        const double s = 1.0 / k;
        double tmax = 0;
        for (size_t j = 0; j < term.re.size(); ++j) {
            term.re[j] *= s;
            term.im[j] *= s;
            tmax = std::max(tmax, std::fabs(term.re[j]) + std::fabs(term.im[j]));
        }
        for (size_t j = 0; j < term.re.size(); ++j) {
            sum.re[j] += term.re[j];
            sum.im[j] += term.im[j];
        }
        if (tmax < tail_tol) break;
    }
    return sum;
}

// --- twisted Birkhoff --------------------------------------------------------

namespace {

// unknown layout: Hm degrees -1..-N (re, im), then Hp degrees 0..N (re, im)
void unpack_tw(const std::vector<double>& u, int n, TwistedLoop& hm, TwistedLoop& hp) {
    hm = TwistedLoop::identity(n);
    hp = TwistedLoop(n);
    int k = 0;
    for (int d = -1; d >= -n; --d) {
        hm.r(d) = u[k++];
        hm.i(d) = u[k++];
    }
    for (int d = 0; d <= n; ++d) {
        hp.r(d) = u[k++];
        hp.i(d) = u[k++];
    }
}

}  // namespace

TwistedBirkhoff birkhoff_twisted(const TwistedLoop& phi, double tol, int maxit,
                                 const TwistedBirkhoff* seed) {
    const int n = phi.nmax;
    const int nu = 4 * n + 2;
    const double scale = std::max(1.0, phi.max_abs());

    std::vector<double> u(nu, 0.0);
    if (seed) {
        int k = 0;
        for (int d = -1; d >= -n; --d) {
            u[k++] = seed->hm.r(d);
            u[k++] = seed->hm.i(d);
        }
        for (int d = 0; d <= n; ++d) {
            u[k++] = seed->hp.r(d);
            u[k++] = seed->hp.i(d);
        }
    } else {
        // linear split: negative part to Hm, rest to Hp
        int k = 0;
        for (int d = -1; d >= -n; --d) {
            u[k++] = phi.r(d);
            u[k++] = phi.i(d);
        }
        for (int d = 0; d <= n; ++d) {
            u[k++] = phi.r(d);
            u[k++] = phi.i(d);
        }
    }

    TwistedLoop hm(n), hp(n);
    std::vector<double> res(nu), jac((size_t)nu * nu), du(nu);

    auto scatter_tw = [n](const TwistedLoop& t, std::vector<double>& out) {
        for (int d = -n; d <= n; ++d) {
            out[2 * (d + n)] += t.r(d);
            out[2 * (d + n) + 1] += t.i(d);
        }
    };

    for (int it = 1; it <= maxit; ++it) {
        unpack_tw(u, n, hm, hp);
        std::fill(res.begin(), res.end(), 0.0);
        scatter_tw(tmul(hm, hp, n), res);
        for (int d = -n; d <= n; ++d) {
            res[2 * (d + n)] -= phi.r(d);
            res[2 * (d + n) + 1] -= phi.i(d);
        }
        double rmax = 0;
        for (double v : res) rmax = std::max(rmax, std::fabs(v));
        if (rmax <= tol * scale) {
            TwistedBirkhoff out;
            out.hm = hm;
            out.hp = hp;
            out.iterations = it - 1;
            out.residual = rmax;
            return out;
        }

        std::fill(jac.begin(), jac.end(), 0.0);
        int ucol = 0;
        auto add_col = [&](int deg, bool imag, bool left) {
            TwistedLoop basis(n);
            (imag ? basis.i(deg) : basis.r(deg)) = 1.0;
            const TwistedLoop prod = left ? tmul(basis, hp, n) : tmul(hm, basis, n);
            for (int d = -n; d <= n; ++d) {
                jac[(size_t)(2 * (d + n)) * nu + ucol] = prod.r(d);
                jac[(size_t)(2 * (d + n) + 1) * nu + ucol] = prod.i(d);
            }
            ++ucol;
        };
        for (int d = -1; d >= -n; --d) {
            add_col(d, false, true);
            add_col(d, true, true);
        }
        for (int d = 0; d <= n; ++d) {
            add_col(d, false, false);
            add_col(d, true, false);
        }

        du = res;
        if (!gauss_solve(jac, du, nu, 1e-13 * scale))
            throw NotInBigCell("birkhoff_twisted: singular correction system");
        for (int i = 0; i < nu; ++i) u[i] -= du[i];
    }
    throw NoConvergence("birkhoff_twisted: Newton iteration ceiling reached");
}

}  // namespace adslf
