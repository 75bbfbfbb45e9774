#include "adslf/gcp.hpp"

namespace adslf {

TabulatedGcpCurve::TabulatedGcpCurve(std::vector<double> t, std::vector<Mat2> f,
                                     std::vector<SlVec> nu)
    : t_(std::move(t)), f_(std::move(f)), nu_(std::move(nu)) {
    const int n = (int)t_.size();
    if (n < 9) throw GridTooSmall("gcp curve needs at least 9 samples");
    const double h = t_[1] - t_[0];
    ftan_.resize(n);
    dftan_.resize(n);
    dnu_.resize(n);
    d2nu_.resize(n);
    for (int k = 0; k < n; ++k) {
        const Mat2 df = fd1_line<Mat2>([&](int i) { return f_[i]; }, k, n, h, 4);
        const Mat2 finv = f_[k].adjugate() * (1.0 / f_[k].det());
        ftan_[k] = sl_part(finv * df);
        dnu_[k] = fd1_line<SlVec>([&](int i) { return nu_[i]; }, k, n, h, 4);
        d2nu_[k] = fd2_line<SlVec>([&](int i) { return nu_[i]; }, k, n, h, 4);
    }
    for (int k = 0; k < n; ++k)
        dftan_[k] = fd1_line<SlVec>([&](int i) { return ftan_[i]; }, k, n, h, 4);
}

GcpCurveEval TabulatedGcpCurve::eval(double t) const {
    const int n = (int)t_.size();
    const double h = t_[1] - t_[0];
    GcpCurveEval e;
    e.f = interp_line<Mat2>([&](int i) { return f_[i]; }, n, t_[0], h, t);
    e.ftan = interp_line<SlVec>([&](int i) { return ftan_[i]; }, n, t_[0], h, t);
    e.dftan = interp_line<SlVec>([&](int i) { return dftan_[i]; }, n, t_[0], h, t);
    e.nu = interp_line<SlVec>([&](int i) { return nu_[i]; }, n, t_[0], h, t);
    e.dnu = interp_line<SlVec>([&](int i) { return dnu_[i]; }, n, t_[0], h, t);
    e.d2nu = interp_line<SlVec>([&](int i) { return d2nu_[i]; }, n, t_[0], h, t);
    return e;
}

namespace {

// Cauchy data induced by the Corollary translation.
class TranslatedCurve final : public CurveData {
  public:
    TranslatedCurve(std::shared_ptr<const GcpCurve> c, double rho) : c_(std::move(c)), rho_(rho) {}

    CurveEval eval(double t) const override {
        const GcpCurveEval e = c_->eval(t);
        const SlVec w = bracket(e.nu, e.ftan) * -0.5;
        const SlVec dw = (bracket(e.dnu, e.ftan) + bracket(e.nu, e.dftan)) * -0.5;
        const double k = (rho_ - 1) / (2 * rho_);
        CurveEval out;
        out.n0 = e.nu;
        out.dn0 = e.dnu;
        out.d2n0 = e.d2nu;
        out.n1 = (e.dnu + w * (rho_ + 1)) * k;
        out.dn1 = (e.d2nu + dw * (rho_ + 1)) * k;
        return out;
    }
    double tmin() const override { return c_->tmin(); }
    double tmax() const override { return c_->tmax(); }

  private:
    std::shared_ptr<const GcpCurve> c_;
    double rho_;
};

}  // namespace

GcpTranslation gcp_translate(const GeometricCauchyData& gcd, int nsamples, double tmin,
                             double tmax, double tol) {
    if (!(gcd.rho > 0) || std::fabs(gcd.rho - 1) < 1e-6)
        throw InvalidParameter("gcp_translate: need 0 < rho != 1");
    GcpTranslation tr;
    tr.diag.min_spacelike = std::numeric_limits<double>::infinity();
    tr.diag.min_nondegen = std::numeric_limits<double>::infinity();
    int good = 0;
    for (int k = 0; k < nsamples; ++k) {
        const double t = tmin + (tmax - tmin) * k / (nsamples - 1);
        const GcpCurveEval e = gcd.curve->eval(t);
        const SlVec w = bracket(e.nu, e.ftan) * -0.5;
        tr.t.push_back(t);
        tr.w.push_back(w);
        tr.diag.min_spacelike = std::min(tr.diag.min_spacelike, sl_inner(e.ftan, e.ftan));
        tr.diag.max_ortho = std::max(tr.diag.max_ortho, std::fabs(sl_inner(e.ftan, e.nu)));
        const double nd = sl_inner(e.dnu + w * (gcd.rho + 1), e.dnu - w * (gcd.rho - 1));
        tr.diag.min_nondegen = std::min(tr.diag.min_nondegen, std::fabs(nd));
        if (std::fabs(nd) > tol) ++good;
    }
    tr.diag.nondegen_fraction = (double)good / nsamples;
    if (!(tr.diag.min_spacelike > 0))
        throw PreconditionViolated("gcp_translate: curve is not spacelike");
    if (tr.diag.max_ortho > 1e-7)
        throw PreconditionViolated("gcp_translate: Gauss map not orthogonal to the curve");
    if (tr.diag.nondegen_fraction < 0.9)
        throw DegenerateData("gcp_translate: nondegeneracy quantity vanishes on the grid");
    tr.cd.curve = std::make_shared<TranslatedCurve>(gcd.curve, gcd.rho);
    tr.cd.preset = true;
    tr.cd.name = gcd.name;
    return tr;
}

GcpResult gcp_solve(const GeometricCauchyData& gcd, const GridSpec& g, SolveOptions opt) {
    GcpResult out;
    out.tr = gcp_translate(gcd, std::min(4 * g.n, 801), g.tmin, g.tmax, opt.tol);

    const DalembertResult dal = dalembert_solve(out.tr.cd, g, opt);
    out.nu = dal.nu;

    // f^-1 df = [nu,nu_x]/(2(rho-1)) dx - [nu,nu_y]/(2(rho+1)) dy is the
    // Case-1 form with r = (rho-1)/2
    const double r = (gcd.rho - 1) / 2;
    const Mat2 init = gcd.curve->eval(g.coord(g.center())).f;
    Case1Options c1;
    c1.parallel = opt.parallel;
    out.sf = reconstruct_case1(dal.nu, r, init, c1);

    for (int i = 0; i < g.n; ++i) {
        const GcpCurveEval e = gcd.curve->eval(g.coord(i));
        out.diag_curve_residual = std::max(out.diag_curve_residual, (out.sf.f.at(i, i) - e.f).norm());
        out.diag_gauss_residual = std::max(out.diag_gauss_residual, (out.nu.at(i, i) - e.nu).norm());
    }
    return out;
}

}  // namespace adslf
