#include "adslf/harmonic.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adslf {

// --- frames ------------------------------------------------------------------

Mat2 frame_at_point(const SlVec& n) {
    // n = Ad over two hyperbolic rotations: sinh(u) = -v3, sinh(s) = v2/cosh(u)
    const double u = std::asinh(-n.v3);
    const double cu = std::sqrt(1.0 + n.v3 * n.v3);
    const double s = std::asinh(n.v2 / cu);
    return exp_sl({0, 0, s / 2}) * exp_sl({0, u / 2, 0});
}

Mat2 curve_frame(const SlVec& n, const SlVec& w) {
    const Mat2 k0 = frame_at_point(n);
    const SlVec wt = ad_action(k0.adjugate(), w);  // adjugate = inverse (det 1)
    const double psi = std::atan2(wt.v3, wt.v2);
    const double th = 0.5 * (psi - M_PI / 2);
    return k0 * exp_sl({th, 0, 0});
}

// --- splits and residuals ------------------------------------------------------

std::pair<LaurentLoop, LaurentLoop> hat_alpha(const SlVec& uk, const SlVec& up,
                                              const SlVec& vk, const SlVec& vp) {
    LaurentLoop ax(0, 1);
    ax.at(0) = to_mat(uk);
    ax.at(1) = to_mat(up);
    LaurentLoop ay(-1, 0);
    ay.at(0) = to_mat(vk);
    ay.at(-1) = to_mat(vp);
    return {ax, ay};
}

McResiduals split_mc_residual(const McSplit& ms) {
    const int n = ms.Uk.g.n;
    if (n < 3) throw GridTooSmall("split_mc_residual: need at least 3 nodes per axis");
    McResiduals r;
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
            const SlVec r1 = fd_dy(ms.Uk, i, j, 2) - fd_dx(ms.Vk, i, j, 2) -
                             bracket(ms.Up.at(i, j), ms.Vp.at(i, j));
            const SlVec r2 = fd_dy(ms.Up, i, j, 2) - bracket(ms.Up.at(i, j), ms.Vk.at(i, j));
            const SlVec r3 = fd_dx(ms.Vp, i, j, 2) - bracket(ms.Uk.at(i, j), ms.Vp.at(i, j));
            r.r1 = std::max(r.r1, r1.norm());
            r.r2 = std::max(r.r2, r2.norm());
            r.r3 = std::max(r.r3, r3.norm());
        }
    return r;
}

AdaptedFrame adapted_frame(const SlField& nu, double tol) {
    const GridSpec g = nu.g;
    AdaptedFrame out;
    out.F = Mat2Field(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const SlVec d = fd_dx(nu, i, j, 4);
            const double n2 = sl_inner(d, d);
            if (!(n2 > tol * tol))
                throw DegenerateDerivative("adapted_frame: <nu_x,nu_x> not positive at node (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
            out.F.at(i, j) = curve_frame(nu.at(i, j), d * (1.0 / std::sqrt(n2)));
        }
    // the closed form is defined up to sign; fix continuity for differentiation
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (i == 0 && j == 0) continue;
            const Mat2& ref = (i > 0) ? out.F.at(i - 1, j) : out.F.at(i, j - 1);
            Mat2& f = out.F.at(i, j);
            if ((f - ref).norm() > (f + ref).norm()) f = -f;
        }
    out.ms.Uk = SlField(g);
    out.ms.Up = SlField(g);
    out.ms.Vk = SlField(g);
    out.ms.Vp = SlField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const Mat2 finv = out.F.at(i, j).adjugate() * (1.0 / out.F.at(i, j).det());
            const SlVec ax = sl_part(finv * fd_dx(out.F, i, j, 4));
            const SlVec ay = sl_part(finv * fd_dy(out.F, i, j, 4));
            out.ms.Uk.at(i, j) = {ax.v1, 0, 0};
            out.ms.Up.at(i, j) = {0, ax.v2, ax.v3};
            out.ms.Vk.at(i, j) = {ay.v1, 0, 0};
            out.ms.Vp.at(i, j) = {0, ay.v2, ay.v3};
        }
    return out;
}

// --- abc -----------------------------------------------------------------------

AbcCoefficients abc_from_data(const CauchyData1D& cd, const std::vector<double>& tgrid,
                              double tol) {
    AbcCoefficients abc;
    abc.t = tgrid;
    abc.a.resize(tgrid.size());
    abc.b.resize(tgrid.size());
    abc.c.resize(tgrid.size());
    for (size_t k = 0; k < tgrid.size(); ++k) {
        const CurveEval e = cd.curve->eval(tgrid[k]);
        const SlVec yd = e.dn0 - e.n1;
        abc.a[k] = sl_inner(e.dn0, bracket(e.n1, e.n0));
        abc.b[k] = sl_inner(e.n1, yd);
        if (std::fabs(abc.b[k]) < tol)
            throw SingularData("abc_from_data: b vanishes at t = " + std::to_string(tgrid[k]));
        const double ax = sl_inner(yd, bracket(e.dn1, e.n0));
        abc.c[k] = ax / (2 * abc.b[k]);
    }
    return abc;
}

void gauge_shift(AbcCoefficients& abc, const std::function<double(double)>& theta_prime) {
    for (size_t k = 0; k < abc.t.size(); ++k) abc.c[k] += theta_prime(abc.t[k]);
}

// --- potential -------------------------------------------------------------------

PotentialCoeff diag_potential(const CurveData& cd, double t) {
    const CurveEval e = cd.eval(t);
    const double q2 = sl_inner(e.n1, e.n1);
    if (!(q2 > 0)) throw SingularData("diag_potential: N1 not spacelike");
    const double q = std::sqrt(q2);
    const SlVec u3 = bracket(e.n1, e.n0);
    const SlVec yd = e.dn0 - e.n1;
    const double p = sl_inner(yd, e.n1) / q2;
    const double m = sl_inner(yd, u3) / (4 * q2);

    PotentialCoeff pc;
    pc.q = q;
    pc.up = {0, -q / 2, 0};
    pc.vp = {0, -p * q / 2, q * m};
    // gamma1 from d/dt (N1/q) = Ad_X [Gamma, e3]
    const double dq = sl_inner(e.dn1, e.n1) / q;
    const SlVec dn1hat = e.dn1 * (1.0 / q) - e.n1 * (dq / q2);
    pc.gamma1 = -sl_inner(dn1hat, u3) / (4 * q);
    return pc;
}

PotentialCoeff potential_from_abc(double a, double b, double c) {
    PotentialCoeff pc;
    pc.gamma1 = c;
    pc.q = 1;
    pc.up = {0, -0.5, 0};
    pc.vp = {0, -b / 2, a / 2};
    return pc;
}

// --- integrators ------------------------------------------------------------------

namespace {
constexpr double kGaussA = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
constexpr double kGaussB = 0.5 + 0.28867513459481288225;

// right-equation Magnus step: X <- X exp(Omega), Omega = h/2 (A1+A2) + sqrt3 h^2/12 [A1,A2]
SlVec magnus_sl(const std::function<SlVec(double)>& coeff, double t, double h) {
    const SlVec a1 = coeff(t + h * kGaussA);
    const SlVec a2 = coeff(t + h * kGaussB);
    return (a1 + a2) * (h / 2) + bracket(a1, a2) * (std::sqrt(3.0) * h * h / 12.0);
}

Mat2 sl_renorm(const Mat2& m) {
    const double d = m.det();
    if (!(d > 0)) throw NumericError("integration left SL(2,R)");
    return m * (1.0 / std::sqrt(d));
}
}  // namespace

std::vector<Mat2> integrate_potential(const std::function<SlVec(double)>& coeff,
                                      const Mat2& init, const GridSpec& axis, int i0) {
    std::vector<Mat2> out((size_t)axis.n);
    out[i0] = init;
    const double h = axis.h();
    for (int i = i0; i + 1 < axis.n; ++i)
        out[i + 1] = sl_renorm(out[i] * exp_sl(magnus_sl(coeff, axis.coord(i), h)));
    for (int i = i0; i > 0; --i)
        out[i - 1] = sl_renorm(out[i] * exp_sl(magnus_sl(coeff, axis.coord(i), -h)));
    return out;
}

// --- d'Alembert solver ---------------------------------------------------------------

namespace {

TwistedLoop potential_loop(const PotentialCoeff& pc, int order) {
    TwistedLoop a(order);
    a.i(0) = pc.gamma1;
    a.r(1) = pc.up.v2;
    a.i(1) = pc.up.v3;
    a.r(-1) = pc.vp.v2;
    a.i(-1) = pc.vp.v3;
    return a;
}

struct LoopLine {
    std::vector<TwistedLoop> X;   // X integrated from identity at the center node
    std::vector<TwistedLoop> W;   // X^-1, co-integrated
    std::vector<Mat2> X1;         // X evaluated at lambda = 1
};

LoopLine integrate_loop_line(const std::function<TwistedLoop(double)>& coeff,
                             const GridSpec& axis, int i0, int order) {
    LoopLine line;
    line.X.assign((size_t)axis.n, TwistedLoop(order));
    line.W.assign((size_t)axis.n, TwistedLoop(order));
    line.X[i0] = TwistedLoop::identity(order);
    line.W[i0] = TwistedLoop::identity(order);
    const double h = axis.h();
    auto omega = [&](double t, double hh) {
        const TwistedLoop a1 = coeff(t + hh * kGaussA);
        const TwistedLoop a2 = coeff(t + hh * kGaussB);
        TwistedLoop om(order);
        const TwistedLoop c12 = tmul(a1, a2, order);
        const TwistedLoop c21 = tmul(a2, a1, order);
        const double w1 = hh / 2, w2 = std::sqrt(3.0) * hh * hh / 12.0;
        for (size_t k = 0; k < om.re.size(); ++k) {
            om.re[k] = w1 * (a1.re[k] + a2.re[k]) + w2 * (c12.re[k] - c21.re[k]);
            om.im[k] = w1 * (a1.im[k] + a2.im[k]) + w2 * (c12.im[k] - c21.im[k]);
        }
        return om;
    };
    auto step = [&](int from, int to, double hh) {
        TwistedLoop om = omega(axis.coord(from), hh);
        const TwistedLoop e = texp(om, order);
        for (size_t k = 0; k < om.re.size(); ++k) {
            om.re[k] = -om.re[k];
            om.im[k] = -om.im[k];
        }
        const TwistedLoop einv = texp(om, order);
        line.X[to] = tmul(line.X[from], e, order);
        line.W[to] = tmul(einv, line.W[from], order);
    };
    for (int i = i0; i + 1 < axis.n; ++i) step(i, i + 1, h);
    for (int i = i0; i > 0; --i) step(i, i - 1, -h);
    line.X1.resize((size_t)axis.n);
    for (int i = 0; i < axis.n; ++i) line.X1[i] = line.X[i].eval(1.0);
    return line;
}

void gate_cauchy_data(const CauchyData1D& cd, const GridSpec& g, double tol) {
    const auto d = cd.validate(std::min(4 * g.n, 801), g.tmin, g.tmax);
    if (!(d.min_n1_norm2 > 0)) throw SingularData("dalembert: N1 not spacelike on the grid");
    if (d.max_ortho > 1e-7)
        throw PreconditionViolated("dalembert: <N1,N0> orthogonality violated");
    // b may vanish identically (pure dx-potential); a crossing is singular
    if (!d.b_identically_zero &&
        (d.b_sign_change || d.min_abs_b < tol * std::max(1.0, d.max_abs_b)))
        throw SingularData("dalembert: b = <N1,N0'-N1> crosses zero on the grid");
    (void)tol;
}

}  // namespace

DalembertResult dalembert_custom(const std::function<PotentialCoeff(double)>& pot, const Mat2& K,
                                 const GridSpec& g, SolveOptions opt) {
    const int order = opt.order;
    auto coeff = [&](double t) { return potential_loop(pot(t), order); };
    const LoopLine line = integrate_loop_line(coeff, g, g.center(), order);

    DalembertResult res;
    res.nu = SlField(g);
    res.frame = Mat2Field(g);

    std::vector<uint8_t> failed((size_t)g.n * g.n, 0);

    // Row marching away from the diagonal: Phi = I there, and each node seeds
    // its neighbour's Newton solve.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
#endif
    for (int j = 0; j < g.n; ++j) {
        auto solve_at = [&](int i, const TwistedBirkhoff* seed, TwistedBirkhoff& out) -> bool {
            const TwistedLoop phi = tmul(line.W[i], line.X[j], order);
            try {
                out = birkhoff_twisted(phi, opt.newton_tol, opt.newton_maxit, seed);
            } catch (const NumericError&) {
                return false;
            }
            const Mat2 f = sl_renorm(K * (line.X1[i] * out.hm.eval(1.0)));
            res.frame.at(i, j) = f;
            res.nu.at(i, j) = ad_action(f, SL_E1);
            return true;
        };
        TwistedBirkhoff fac;
        // diagonal node: trivial factorization
        if (!solve_at(j, nullptr, fac)) failed[(size_t)j * g.n + j] = 1;
        TwistedBirkhoff up = fac;
        for (int i = j + 1; i < g.n; ++i) {
            if (!solve_at(i, &up, up)) {
                for (int k = i; k < g.n; ++k) failed[(size_t)j * g.n + k] = 1;
                break;
            }
        }
        TwistedBirkhoff down = fac;
        for (int i = j - 1; i >= 0; --i) {
            if (!solve_at(i, &down, down)) {
                for (int k = i; k >= 0; --k) failed[(size_t)j * g.n + k] = 1;
                break;
            }
        }
    }

    std::vector<std::pair<int, int>> bad;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (failed[(size_t)j * g.n + i]) bad.emplace_back(i, j);
    if (!bad.empty())
        throw NotInBigCell("dalembert_solve: factorization failed at " +
                               std::to_string(bad.size()) + " nodes",
                           bad);
    return res;
}

DalembertResult dalembert_solve(const CauchyData1D& cd, const GridSpec& g, SolveOptions opt) {
    gate_cauchy_data(cd, g, opt.tol);
    const CurveData& curve = *cd.curve;
    const CurveEval ec = curve.eval(g.coord(g.center()));
    const double qc = std::sqrt(sl_inner(ec.n1, ec.n1));
    const Mat2 K = curve_frame(ec.n0, ec.n1 * (1.0 / qc));
    return dalembert_custom([&curve](double t) { return diag_potential(curve, t); }, K, g, opt);
}

DalembertResult dalembert_lambda1(const CauchyData1D& cd, const GridSpec& g, SolveOptions opt) {
    gate_cauchy_data(cd, g, opt.tol);
    const CurveData& curve = *cd.curve;

    const CurveEval ec = curve.eval(g.coord(g.center()));
    const double qc = std::sqrt(sl_inner(ec.n1, ec.n1));
    const Mat2 K = curve_frame(ec.n0, ec.n1 * (1.0 / qc));

    auto coeff = [&](double t) { return diag_potential(curve, t).lambda1(); };
    const std::vector<Mat2> X = integrate_potential(coeff, K, g, g.center());
    std::vector<Mat2> Xinv((size_t)g.n);
    for (int i = 0; i < g.n; ++i) Xinv[i] = X[i].adjugate() * (1.0 / X[i].det());

    DalembertResult res;
    res.nu = SlField(g);
    res.frame = Mat2Field(g);
    std::vector<std::pair<int, int>> bad;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const Mat2 phi = Xinv[i] * X[j];
            try {
                const BigCellFactors f = big_cell_factor(phi);
                const Mat2 fr = sl_renorm(X[i] * f.lower);
                res.frame.at(i, j) = fr;
                res.nu.at(i, j) = ad_action(fr, SL_E1);
            } catch (const NumericError&) {
                bad.emplace_back(i, j);
            }
        }
    if (!bad.empty())
        throw NotInBigCell("dalembert_lambda1: pointwise factorization failed at " +
                               std::to_string(bad.size()) + " nodes",
                           bad);
    return res;
}

// --- characteristic oracle --------------------------------------------------------

namespace {

SlVec h2_normalize(const SlVec& v) {
    const double n2 = -sl_inner(v, v);
    return v * (1.0 / std::sqrt(n2));
}

// One marching cell.  P is the corner opposite C; A shares y with P (dx edge),
// B shares x with P.  From the rectangle identity
//   nu(TR) - nu(TL) - nu(BR) + nu(BL) = integral of nu_xy,
// with P in the TL (upper triangle) or BR (lower triangle) position the
// midpoint-rule correction enters with a minus sign.
SlVec march_cell(const SlVec& a, const SlVec& b, const SlVec& c, double h) {
    SlVec p = a + b - c;
    for (int pass = 0; pass < 2; ++pass) {
        const SlVec mid = (p + a + b + c) * 0.25;
        const SlVec nx = ((b + c) - (p + a)) * (0.5 / h);
        const SlVec ny = ((p + b) - (a + c)) * (0.5 / h);
        p = a + b - c - mid * (sl_inner(nx, ny) * h * h);
    }
    return h2_normalize(p);
}

}  // namespace

SlField characteristic_oracle_ref(const CauchyData1D& cd, const GridSpec& g) {
    const CurveData& curve = *cd.curve;
    const int n = g.n;
    const double h = g.h();
    SlField nu(g);

    // diagonal data
    std::vector<CurveEval> diag((size_t)n);
    for (int i = 0; i < n; ++i) {
        diag[i] = curve.eval(g.coord(i));
        nu.at(i, i) = h2_normalize(diag[i].n0);
    }
    // first layer by second-order Taylor steps off the diagonal
    for (int i = 0; i < n; ++i) {
        const CurveEval& e = diag[i];
        const double b = sl_inner(e.n1, e.dn0 - e.n1);
        if (i + 1 < n) {  // step +x
            const SlVec nxx = e.dn1 - e.n0 * b;
            nu.at(i + 1, i) = h2_normalize(e.n0 + e.n1 * h + nxx * (h * h / 2));
        }
        if (i + 1 < n) {  // step +y
            const SlVec yd = e.dn0 - e.n1;
            const SlVec nyy = (e.d2n0 - e.dn1) - e.n0 * b;
            nu.at(i, i + 1) = h2_normalize(e.n0 + yd * h + nyy * (h * h / 2));
        }
    }
    // characteristic rectangles level by level
    for (int lvl = 2; lvl < n; ++lvl) {
        for (int i = 0; i + lvl < n; ++i) {  // upper triangle: P = (i, i+lvl), TL corner
            const int j = i + lvl;
            nu.at(i, j) = march_cell(nu.at(i, j - 1), nu.at(i + 1, j), nu.at(i + 1, j - 1), h);
        }
        for (int j = 0; j + lvl < n; ++j) {  // lower triangle: P = (j+lvl, j), BR corner
            const int i = j + lvl;
            nu.at(i, j) = march_cell(nu.at(i - 1, j), nu.at(i, j + 1), nu.at(i - 1, j + 1), h);
        }
    }
    return nu;
}

SlField characteristic_oracle(const CauchyData1D& cd, const GridSpec& g, bool parallel) {
    if (!parallel) return characteristic_oracle_ref(cd, g);
    const CurveData& curve = *cd.curve;
    const int n = g.n;
    const double h = g.h();
    SlField nu(g);

    std::vector<CurveEval> diag((size_t)n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        diag[i] = curve.eval(g.coord(i));
        nu.at(i, i) = h2_normalize(diag[i].n0);
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n - 1; ++i) {
        const CurveEval& e = diag[i];
        const double b = sl_inner(e.n1, e.dn0 - e.n1);
        const SlVec nxx = e.dn1 - e.n0 * b;
        nu.at(i + 1, i) = h2_normalize(e.n0 + e.n1 * h + nxx * (h * h / 2));
        const SlVec yd = e.dn0 - e.n1;
        const SlVec nyy = (e.d2n0 - e.dn1) - e.n0 * b;
        nu.at(i, i + 1) = h2_normalize(e.n0 + yd * h + nyy * (h * h / 2));
    }
    for (int lvl = 2; lvl < n; ++lvl) {
        // all nodes of one level are independent (wavefront parallelism; the
        // per-node arithmetic is fixed, so results are schedule independent)
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < n - lvl; ++i) {
            const int j = i + lvl;
            nu.at(i, j) = march_cell(nu.at(i, j - 1), nu.at(i + 1, j), nu.at(i + 1, j - 1), h);
        }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int j = 0; j < n - lvl; ++j) {
            const int i = j + lvl;
            nu.at(i, j) = march_cell(nu.at(i - 1, j), nu.at(i, j + 1), nu.at(i - 1, j + 1), h);
        }
    }
    return nu;
}

// --- harmonicity residual ------------------------------------------------------------

double harmonicity_residual_ref(const SlField& nu) {
    const int n = nu.g.n;
    if (n < 3) throw GridTooSmall("harmonicity_residual: need at least 3 nodes per axis");
    const double h = nu.g.h();
    double worst = 0;
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
            const SlVec nxy = (nu.at(i + 1, j + 1) - nu.at(i + 1, j - 1) - nu.at(i - 1, j + 1) +
                               nu.at(i - 1, j - 1)) *
                              (1.0 / (4 * h * h));
            worst = std::max(worst, bracket(nu.at(i, j), nxy).norm());
        }
    return worst;
}

double harmonicity_residual(const SlField& nu, bool parallel) {
    if (!parallel) return harmonicity_residual_ref(nu);
    const int n = nu.g.n;
    if (n < 3) throw GridTooSmall("harmonicity_residual: need at least 3 nodes per axis");
    const double h = nu.g.h();
    double worst = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst)
#endif
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
            const SlVec nxy = (nu.at(i + 1, j + 1) - nu.at(i + 1, j - 1) - nu.at(i - 1, j + 1) +
                               nu.at(i - 1, j - 1)) *
                              (1.0 / (4 * h * h));
            worst = std::max(worst, bracket(nu.at(i, j), nxy).norm());
        }
    return worst;
}

}  // namespace adslf
