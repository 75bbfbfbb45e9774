#include "adslf/mat2.hpp"

namespace adslf {

Mat2 exp_sl(const SlVec& x) {
    const double d = x.v1 * x.v1 - x.v2 * x.v2 - x.v3 * x.v3;  // det of the embedded matrix
    double c0, c1;
    if (std::fabs(d) < 1e-8) {
        // entire-series branch: c0 = sum (-d)^k/(2k)!, c1 = sum (-d)^k/(2k+1)!
        c0 = 1.0 - d / 2.0 + d * d / 24.0 - d * d * d / 720.0;
        c1 = 1.0 - d / 6.0 + d * d / 120.0 - d * d * d / 5040.0;
    } else if (d > 0) {
        const double s = std::sqrt(d);
        c0 = std::cos(s);
        c1 = std::sin(s) / s;
    } else {
        const double s = std::sqrt(-d);
        c0 = std::cosh(s);
        c1 = std::sinh(s) / s;
    }
    return E0 * c0 + to_mat(x) * c1;
}

BracketIdentityResiduals bracket_identities_check(const SlVec& x, const SlVec& y, const SlVec& z,
                                                  double ortho_tol) {
    // scale-aware orthogonality gate on the caller-supplied Z
    const double scale = std::max(1.0, z.norm() * std::max(x.norm(), y.norm()));
    if (std::fabs(sl_inner(z, x)) > ortho_tol * scale || std::fabs(sl_inner(z, y)) > ortho_tol * scale)
        throw PreconditionViolated("bracket_identities_check: Z not orthogonal to X and Y");

    BracketIdentityResiduals r;
    const SlVec xy = bracket(x, y);
    r.r1 = std::fabs(sl_inner(x, xy));
    r.r2 = std::fabs(sl_inner(xy, xy) -
                     4.0 * (sl_inner(x, y) * sl_inner(x, y) - sl_inner(x, x) * sl_inner(y, y)));
    const SlVec zx = bracket(z, x);
    const SlVec zy = bracket(z, y);
    r.r3 = (bracket(zx, zy) + 4.0 * sl_inner(z, z) * xy).norm();
    r.r4 = std::fabs(sl_inner(zx, zy) + 4.0 * sl_inner(z, z) * sl_inner(x, y));
    return r;
}

BigCellFactors big_cell_factor(const Mat2& p, double tol) {
    const double scale = std::max(1.0, p.max_abs());
    if (std::fabs(p.a11) < tol * scale)
        throw NotInBigCell("big_cell_factor: |P11| below tolerance");
    BigCellFactors f;
    f.lower = {1, 0, p.a21 / p.a11, 1};
    f.upper = {p.a11, p.a12, 0, p.det() / p.a11};
    return f;
}

}  // namespace adslf
