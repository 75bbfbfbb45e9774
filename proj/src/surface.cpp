#include "adslf/surface.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adslf {

namespace {
constexpr double kGaussA = 0.5 - 0.28867513459481288225;
constexpr double kGaussB = 0.5 + 0.28867513459481288225;

Mat2 sl_renorm(const Mat2& m) {
    const double d = m.det();
    if (!(d > 0)) throw NumericError("surface integration left SL(2,R)");
    return m * (1.0 / std::sqrt(d));
}

Mat2 beta_step(const std::function<SlVec(double)>& coeff, const Mat2& f, double t, double h) {
    const SlVec a1 = coeff(t + h * kGaussA);
    const SlVec a2 = coeff(t + h * kGaussB);
    const SlVec om = (a1 + a2) * (h / 2) + bracket(a1, a2) * (std::sqrt(3.0) * h * h / 12.0);
    return sl_renorm(f * exp_sl(om));
}
}  // namespace

Mat2Field integrate_beta(const BetaProvider& beta, const GridSpec& g, int i0, int j0,
                         const Mat2& init, bool parallel, bool column_first) {
    Mat2Field f(g);
    const double h = g.h();

    if (!column_first) {
        // base row, then columns
        f.at(i0, j0) = init;
        const double y0 = g.coord(j0);
        auto bx_row = [&](double x) { return beta.bx(x, y0); };
        for (int i = i0; i + 1 < g.n; ++i) f.at(i + 1, j0) = beta_step(bx_row, f.at(i, j0), g.coord(i), h);
        for (int i = i0; i > 0; --i) f.at(i - 1, j0) = beta_step(bx_row, f.at(i, j0), g.coord(i), -h);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
        for (int i = 0; i < g.n; ++i) {
            const double x = g.coord(i);
            auto by_col = [&](double y) { return beta.by(x, y); };
            for (int j = j0; j + 1 < g.n; ++j) f.at(i, j + 1) = beta_step(by_col, f.at(i, j), g.coord(j), h);
            for (int j = j0; j > 0; --j) f.at(i, j - 1) = beta_step(by_col, f.at(i, j), g.coord(j), -h);
        }
    } else {
        f.at(i0, j0) = init;
        const double x0 = g.coord(i0);
        auto by_col = [&](double y) { return beta.by(x0, y); };
        for (int j = j0; j + 1 < g.n; ++j) f.at(i0, j + 1) = beta_step(by_col, f.at(i0, j), g.coord(j), h);
        for (int j = j0; j > 0; --j) f.at(i0, j - 1) = beta_step(by_col, f.at(i0, j), g.coord(j), -h);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
        for (int j = 0; j < g.n; ++j) {
            const double y = g.coord(j);
            auto bx_row = [&](double x) { return beta.bx(x, y); };
            for (int i = i0; i + 1 < g.n; ++i) f.at(i + 1, j) = beta_step(bx_row, f.at(i, j), g.coord(i), h);
            for (int i = i0; i > 0; --i) f.at(i - 1, j) = beta_step(bx_row, f.at(i, j), g.coord(i), -h);
        }
    }
    return f;
}

// grid-backed beta with quartic interpolation along the integration lines
namespace {

class GridBeta final : public BetaProvider {
  public:
    GridBeta(SlField bx, SlField by) : bx_(std::move(bx)), by_(std::move(by)) {}

    SlVec bx(double x, double y) const override {
        const GridSpec& g = bx_.g;
        const int j = nearest(g, y);
        return interp_line<SlVec>([&](int i) { return bx_.at(i, j); }, g.n, g.tmin, g.h(), x);
    }
    SlVec by(double x, double y) const override {
        const GridSpec& g = by_.g;
        const int i = nearest(g, x);
        return interp_line<SlVec>([&](int j) { return by_.at(i, j); }, g.n, g.tmin, g.h(), y);
    }

  private:
    static int nearest(const GridSpec& g, double t) {
        int i = (int)std::lround((t - g.tmin) / g.h());
        return std::clamp(i, 0, g.n - 1);
    }
    SlField bx_, by_;
};

}  // namespace

SurfaceField reconstruct_case1(const SlField& nu, double r, const Mat2& init, Case1Options opt) {
    if (std::fabs(r) < 1e-9 || std::fabs(r + 1) < 1e-9)
        throw InvalidParameter("reconstruct_case1: r must avoid 0 and -1");
    const GridSpec g = nu.g;
    if (g.n < 5) throw GridTooSmall("reconstruct_case1: need at least 5 nodes per axis");

    SlField bxf(g), byf(g);
    double min_rank = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const SlVec nx = fd_dx(nu, i, j, 4);
            const SlVec ny = fd_dy(nu, i, j, 4);
            const double nnx = nx.norm(), nny = ny.norm();
            if (nnx < opt.tol || nny < opt.tol)
                throw DegenerateGaussMap("reconstruct_case1: vanishing nu derivative (Case 2 data)");
            min_rank = std::min(min_rank, bracket(nx, ny).norm() / (nnx * nny));
            bxf.at(i, j) = bracket(nu.at(i, j), nx) * (1.0 / (4 * r));
            byf.at(i, j) = bracket(nu.at(i, j), ny) * (-1.0 / (4 * (r + 1)));
        }
    if (min_rank < opt.tol)
        throw DegenerateGaussMap("reconstruct_case1: nu_x parallel to nu_y (Gauss map not an immersion)");

    const int i0 = opt.base_i >= 0 ? opt.base_i : g.center();
    const int j0 = opt.base_j >= 0 ? opt.base_j : g.center();
    const GridBeta beta(std::move(bxf), std::move(byf));

    SurfaceField sf;
    sf.g = g;
    sf.nu = nu;
    sf.f = integrate_beta(beta, g, i0, j0, init, opt.parallel, false);
    const Mat2Field alt = integrate_beta(beta, g, i0, j0, init, opt.parallel, true);
    double pr = 0;
    pr = std::max(pr, (sf.f.at(g.n - 1, g.n - 1) - alt.at(g.n - 1, g.n - 1)).norm());
    pr = std::max(pr, (sf.f.at(0, 0) - alt.at(0, 0)).norm());
    pr = std::max(pr, (sf.f.at(0, g.n - 1) - alt.at(0, g.n - 1)).norm());
    pr = std::max(pr, (sf.f.at(g.n - 1, 0) - alt.at(g.n - 1, 0)).norm());
    sf.path_residual = pr;

    sf.N = Mat2Field(g);
    sf.mask = MaskField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            sf.N.at(i, j) = sf.f.at(i, j) * to_mat(nu.at(i, j));
            sf.mask.at(i, j) = 1;
        }
    return sf;
}

OmegaField solve_omega(const Mat2Field& frame, double A, double B) {
    const GridSpec g = frame.g;
    OmegaField om;
    om.g = g;
    om.A = A;
    om.B = B;
    om.omega = SlField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = g.coord(i);
            const double w2 = -A * std::tanh(x) - B / std::cosh(x);
            const double w3 = -A / std::cosh(x) + B * std::tanh(x);
            om.omega.at(i, j) = ad_action(frame.at(i, j), SlVec{0, w2, w3});
        }
    return om;
}

SurfaceField reconstruct_case2(const SlField& nu, const OmegaField& om, const Mat2& init,
                               Case1Options opt) {
    const GridSpec g = nu.g;
    if (g.n < 5) throw GridTooSmall("reconstruct_case2: need at least 5 nodes per axis");
    if (!(om.g == g)) throw PreconditionViolated("reconstruct_case2: omega grid mismatch");

    SlField bxf(g), byf(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const SlVec nx = fd_dx(nu, i, j, 4);
            const SlVec ny = fd_dy(nu, i, j, 4);
            if (ny.norm() > 1e-6)
                throw PreconditionViolated("reconstruct_case2: nu depends on y");
            if (bracket(nx, om.omega.at(i, j)).norm() < opt.tol)
                throw DegenerateOmega("reconstruct_case2: [nu_x, omega] degenerates");
            bxf.at(i, j) = bracket(nu.at(i, j), nx) * (-0.25);
            byf.at(i, j) = bracket(nu.at(i, j), om.omega.at(i, j));
        }

    const int i0 = opt.base_i >= 0 ? opt.base_i : g.center();
    const int j0 = opt.base_j >= 0 ? opt.base_j : g.center();
    const GridBeta beta(std::move(bxf), std::move(byf));

    SurfaceField sf;
    sf.g = g;
    sf.nu = nu;
    sf.f = integrate_beta(beta, g, i0, j0, init, opt.parallel, false);
    const Mat2Field alt = integrate_beta(beta, g, i0, j0, init, opt.parallel, true);
    sf.path_residual = (sf.f.at(g.n - 1, g.n - 1) - alt.at(g.n - 1, g.n - 1)).norm();
    sf.N = Mat2Field(g);
    sf.mask = MaskField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            sf.N.at(i, j) = sf.f.at(i, j) * to_mat(nu.at(i, j));
            sf.mask.at(i, j) = 1;
        }
    return sf;
}

// --- fundamental forms ----------------------------------------------------------

namespace {

void forms_at(const SurfaceField& sf, int i, int j, SurfaceGeometry& out, double tol) {
    const size_t k = out.idx(i, j);
    const Mat2 fx = fd_dx(sf.f, i, j, 4), fy = fd_dy(sf.f, i, j, 4);
    const Mat2 fxx = fd_dxx(sf.f, i, j, 4), fyy = fd_dyy(sf.f, i, j, 4);
    const Mat2 fxy = fd_dxy(sf.f, i, j, 4);
    const Mat2& N = sf.N.at(i, j);

    const double E = gl_inner(fx, fx), F = gl_inner(fx, fy), G = gl_inner(fy, fy);
    const double L = gl_inner(fxx, N), M = gl_inner(fxy, N), Nn = gl_inner(fyy, N);
    out.I[k] = {E, F, G};
    out.II[k] = {L, M, Nn};

    const double detI = E * G - F * F;
    const double scale = std::max({1.0, E * E, F * F, G * G});
    if (detI > tol * scale && E > 0)
        out.causal[k] = Causal::spacelike;
    else if (detI < -tol * scale)
        out.causal[k] = Causal::lorentzian;
    else
        out.causal[k] = Causal::degenerate;

    const int m = out.margin;
    const bool interior = i >= m && j >= m && i < sf.g.n - m && j < sf.g.n - m;
    if (std::fabs(detI) > tol * scale && interior && sf.mask.at(i, j)) {
        // S = I^-1 II
        const double s11 = (G * L - F * M) / detI, s12 = (G * M - F * Nn) / detI;
        const double s21 = (E * M - F * L) / detI, s22 = (E * Nn - F * M) / detI;
        out.S[k] = {s11, s12, s21, s22};
        out.Kext[k] = s11 * s22 - s12 * s21;
        out.H[k] = 0.5 * (s11 + s22);
        out.valid[k] = 1;
    } else {
        out.S[k] = {0, 0, 0, 0};
        out.Kext[k] = std::numeric_limits<double>::quiet_NaN();
        out.H[k] = std::numeric_limits<double>::quiet_NaN();
        out.valid[k] = 0;
    }
}

}  // namespace

SurfaceGeometry fundamental_forms_ref(const SurfaceField& sf, double tol) {
    const GridSpec g = sf.g;
    if (g.n < 5) throw GridTooSmall("fundamental_forms: need at least 5 nodes per axis");
    SurfaceGeometry out;
    out.g = g;
    out.margin = 3;
    const size_t nn = (size_t)g.n * g.n;
    out.I.resize(nn);
    out.II.resize(nn);
    out.S.resize(nn);
    out.Kext.resize(nn);
    out.H.resize(nn);
    out.causal.resize(nn);
    out.valid.assign(nn, 0);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) forms_at(sf, i, j, out, tol);
    return out;
}

SurfaceGeometry fundamental_forms(const SurfaceField& sf, bool parallel, double tol) {
    if (!parallel) return fundamental_forms_ref(sf, tol);
    const GridSpec g = sf.g;
    if (g.n < 5) throw GridTooSmall("fundamental_forms: need at least 5 nodes per axis");
    SurfaceGeometry out;
    out.g = g;
    out.margin = 3;
    const size_t nn = (size_t)g.n * g.n;
    out.I.resize(nn);
    out.II.resize(nn);
    out.S.resize(nn);
    out.Kext.resize(nn);
    out.H.resize(nn);
    out.causal.resize(nn);
    out.valid.assign(nn, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) forms_at(sf, i, j, out, tol);
    return out;
}

SurfaceGeometry::Stats SurfaceGeometry::kp1_stats() const {
    Stats s;
    s.minv = std::numeric_limits<double>::infinity();
    s.maxv = -s.minv;
    double sum = 0, sum2 = 0;
    for (size_t k = 0; k < Kext.size(); ++k)
        if (valid[k]) {
            sum += Kext[k];
            s.minv = std::min(s.minv, Kext[k]);
            s.maxv = std::max(s.maxv, Kext[k]);
            ++s.count;
        }
    if (!s.count) return s;
    s.mean = sum / s.count;
    for (size_t k = 0; k < Kext.size(); ++k)
        if (valid[k]) sum2 += (Kext[k] - s.mean) * (Kext[k] - s.mean);
    s.stddev = std::sqrt(sum2 / s.count);
    return s;
}

SurfaceGeometry::Stats SurfaceGeometry::h_stats() const {
    Stats s;
    s.minv = std::numeric_limits<double>::infinity();
    s.maxv = -s.minv;
    double sum = 0, sum2 = 0;
    for (size_t k = 0; k < H.size(); ++k)
        if (valid[k]) {
            sum += H[k];
            s.minv = std::min(s.minv, H[k]);
            s.maxv = std::max(s.maxv, H[k]);
            ++s.count;
        }
    if (!s.count) return s;
    s.mean = sum / s.count;
    for (size_t k = 0; k < H.size(); ++k)
        if (valid[k]) sum2 += (H[k] - s.mean) * (H[k] - s.mean);
    s.stddev = std::sqrt(sum2 / s.count);
    return s;
}

// --- frame ratios ----------------------------------------------------------------

FrameRatios frame_ratios(const SurfaceField& sf, const AdaptedFrame& af, double tol) {
    const GridSpec g = sf.g;
    FrameRatios out;
    out.r = Field2<double>(g);
    out.s = Field2<double>(g);
    out.margin = 2;
    double sum = 0, sum2 = 0;
    int count = 0;
    for (int j = out.margin; j < g.n - out.margin; ++j)
        for (int i = out.margin; i < g.n - out.margin; ++i) {
            const Mat2 finv = sf.f.at(i, j).adjugate() * (1.0 / sf.f.at(i, j).det());
            const SlVec tx = sl_part(finv * fd_dx(sf.f, i, j, 4));
            const SlVec ty = sl_part(finv * fd_dy(sf.f, i, j, 4));
            const Mat2 Finv = af.F.at(i, j).adjugate() * (1.0 / af.F.at(i, j).det());
            const SlVec w1 = ad_action(Finv, tx);
            const SlVec w2 = ad_action(Finv, ty);
            const double n1 = w1.v1 * w1.v1 + w1.v2 * w1.v2 + w1.v3 * w1.v3;
            const double n2 = w2.v1 * w2.v1 + w2.v2 * w2.v2 + w2.v3 * w2.v3;
            if (n1 < tol * tol || n2 < tol * tol)
                throw DegenerateTangent("frame_ratios: vanishing tangent coefficient");
            const SlVec up = af.ms.Up.at(i, j), vp = af.ms.Vp.at(i, j);
            const double rr = (up.v1 * w1.v1 + up.v2 * w1.v2 + up.v3 * w1.v3) / n1;
            const double ss = (vp.v1 * w2.v1 + vp.v2 * w2.v2 + vp.v3 * w2.v3) / n2;
            out.r.at(i, j) = rr;
            out.s.at(i, j) = ss;
            out.max_one_r_s = std::max(out.max_one_r_s, std::fabs(1 + rr + ss));
            out.max_fit_residual = std::max(out.max_fit_residual,
                                            std::max((up - w1 * rr).norm(), (vp - w2 * ss).norm()));
            sum += rr;
            sum2 += rr * rr;
            ++count;
        }
    if (count) {
        out.r_mean = sum / count;
        out.r_stddev = std::sqrt(std::max(0.0, sum2 / count - out.r_mean * out.r_mean));
    }
    return out;
}

}  // namespace adslf
