#include "adslf/parallel_surface.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adslf {

namespace {
void transform_node(const SurfaceField& sf, const SurfaceGeometry& geom, double ct, double st,
                    double tol, int i, int j, SurfaceField& out) {
    const size_t k = geom.idx(i, j);
    if (!geom.valid[k]) {
        out.mask.at(i, j) = 0;
        return;
    }
    const auto& S = geom.S[k];
    const double det = (ct + st * S[0]) * (ct + st * S[3]) - st * st * S[1] * S[2];
    if (std::fabs(det) <= tol) {
        out.mask.at(i, j) = 0;
        return;
    }
    out.mask.at(i, j) = 1;
    out.f.at(i, j) = sf.f.at(i, j) * ct + sf.N.at(i, j) * st;
    out.N.at(i, j) = sf.N.at(i, j) * ct - sf.f.at(i, j) * st;
}
}  // namespace

SurfaceField parallel_surface_ref(const SurfaceField& sf, const SurfaceGeometry& geom,
                                  double theta, double tol) {
    SurfaceField out;
    out.g = sf.g;
    out.nu = sf.nu;
    out.f = Mat2Field(sf.g);
    out.N = Mat2Field(sf.g);
    out.mask = MaskField(sf.g);
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int j = 0; j < sf.g.n; ++j)
        for (int i = 0; i < sf.g.n; ++i) transform_node(sf, geom, ct, st, tol, i, j, out);
    size_t alive = 0;
    for (auto m : out.mask.a) alive += m;
    if (!alive) throw FullySingular("parallel_surface: singularity mask empty");
    return out;
}

SurfaceField parallel_surface(const SurfaceField& sf, const SurfaceGeometry& geom, double theta,
                              bool parallel, double tol) {
    if (!parallel) return parallel_surface_ref(sf, geom, theta, tol);
    SurfaceField out;
    out.g = sf.g;
    out.nu = sf.nu;
    out.f = Mat2Field(sf.g);
    out.N = Mat2Field(sf.g);
    out.mask = MaskField(sf.g);
    const double ct = std::cos(theta), st = std::sin(theta);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < sf.g.n; ++j)
        for (int i = 0; i < sf.g.n; ++i) transform_node(sf, geom, ct, st, tol, i, j, out);
    size_t alive = 0;
    for (auto m : out.mask.a) alive += m;
    if (!alive) throw FullySingular("parallel_surface: singularity mask empty");
    return out;
}

std::pair<double, double> parallel_curvatures(double K, double H, double theta, double tol) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double s2 = std::sin(2 * theta), c2 = std::cos(2 * theta);
    const double denom = K * s * s - H * s2 + 1;
    if (std::fabs(denom) < tol)
        throw SingularAngle("parallel_curvatures: singular angle");
    return {(K * c2 + 2 * H * s2) / denom, (K * s * c - H * c2) / denom};
}

std::pair<double, double> theta_for_cgc(double H) {
    const double theta = 0.5 * std::atan2(1.0, H);  // principal branch in (0, pi/2)
    const double t = std::tan(theta);
    return {theta, 1.0 / (t * t) - 1.0};
}

std::pair<double, double> theta_for_cmc(double K) {
    if (!(K + 1 > 0))
        throw NoRealAngle("theta_for_cmc: K + 1 <= 0 admits no real parallel CMC angle");
    const double theta = std::atan(1.0 / std::sqrt(K + 1));
    const double h = std::cos(2 * theta) / std::sin(2 * theta);
    return {theta, h};
}

std::vector<CmcCurveSample> gcp_transfer(const std::vector<CmcCurveSample>& data, double theta,
                                         const std::vector<std::pair<double, double>>* kh,
                                         double tol) {
    if (kh) {
        for (size_t k = 0; k < kh->size(); ++k) {
            const double s = std::sin(theta);
            const double denom = (*kh)[k].first * s * s - (*kh)[k].second * std::sin(2 * theta) + 1;
            if (std::fabs(denom) < tol)
                throw SingularAngle("gcp_transfer: singular angle along the curve");
        }
    }
    const double ct = std::cos(theta), st = std::sin(theta);
    std::vector<CmcCurveSample> out(data.size());
    for (size_t k = 0; k < data.size(); ++k) {
        out[k].f = data[k].f * ct + data[k].N * st;
        out[k].N = data[k].N * ct - data[k].f * st;
    }
    return out;
}

}  // namespace adslf
