#include "adslf/curve.hpp"

#include "adslf/grid.hpp"

namespace adslf {

TabulatedCurve::TabulatedCurve(std::vector<double> t, std::vector<SlVec> n0, std::vector<SlVec> n1)
    : t_(std::move(t)), n0_(std::move(n0)), n1_(std::move(n1)) {
    const int n = (int)t_.size();
    if (n < 9) throw GridTooSmall("tabulated curve needs at least 9 samples");
    const double h = t_[1] - t_[0];
    for (int k = 1; k + 1 < n; ++k)
        if (std::fabs((t_[k + 1] - t_[k]) - h) > 1e-9 * std::max(1.0, std::fabs(h)))
            throw PreconditionViolated("tabulated curve: nonuniform t grid");
    dn0_.resize(n);
    dn1_.resize(n);
    d2n0_.resize(n);
    for (int k = 0; k < n; ++k) {
        dn0_[k] = fd1_line<SlVec>([&](int i) { return n0_[i]; }, k, n, h, 4);
        dn1_[k] = fd1_line<SlVec>([&](int i) { return n1_[i]; }, k, n, h, 4);
        d2n0_[k] = fd2_line<SlVec>([&](int i) { return n0_[i]; }, k, n, h, 4);
    }
}

CurveEval TabulatedCurve::eval(double t) const {
    const int n = (int)t_.size();
    const double h = t_[1] - t_[0];
    CurveEval e;
    auto ip = [&](const std::vector<SlVec>& v) {
        return interp_line<SlVec>([&](int i) { return v[i]; }, n, t_[0], h, t);
    };
    e.n0 = ip(n0_);
    e.n1 = ip(n1_);
    e.dn0 = ip(dn0_);
    e.dn1 = ip(dn1_);
    e.d2n0 = ip(d2n0_);
    return e;
}

CauchyData1D::Diagnostics CauchyData1D::validate(int nsamples, double tmin, double tmax) const {
    Diagnostics d;
    d.min_n1_norm2 = std::numeric_limits<double>::infinity();
    d.min_nondegen_thm = std::numeric_limits<double>::infinity();
    d.min_nondegen_coro = std::numeric_limits<double>::infinity();
    d.min_abs_b = std::numeric_limits<double>::infinity();
    double prev_b = 0;
    bool seen_nonzero = false;
    for (int k = 0; k < nsamples; ++k) {
        const double t = tmin + (tmax - tmin) * k / (nsamples - 1);
        const CurveEval e = curve->eval(t);
        d.max_ortho = std::max(d.max_ortho, std::fabs(sl_inner(e.n1, e.n0)));
        d.max_h2_defect = std::max(d.max_h2_defect, std::fabs(sl_inner(e.n0, e.n0) + 1.0));
        d.min_n1_norm2 = std::min(d.min_n1_norm2, sl_inner(e.n1, e.n1));
        const SlVec yd = e.dn0 - e.n1;
        const double b = sl_inner(e.n1, yd);
        const double coro = sl_inner(e.n1, e.dn0 * 2.0 - e.n1);
        d.min_abs_b = std::min(d.min_abs_b, std::fabs(b));
        d.max_abs_b = std::max(d.max_abs_b, std::fabs(b));
        d.min_nondegen_thm = std::min(d.min_nondegen_thm, std::fabs(b));
        d.min_nondegen_coro = std::min(d.min_nondegen_coro, std::fabs(coro));
        if (std::fabs(b) > 1e-12) {
            if (seen_nonzero && prev_b * b < 0) d.b_sign_change = true;
            seen_nonzero = true;
            prev_b = b;
        }
    }
    d.b_identically_zero = !seen_nonzero;
    return d;
}

}  // namespace adslf
