#pragma once

#include "adslf/surface.hpp"

namespace adslf {

// Parallel surface at angular distance theta:
//   f^theta = f cos(theta) + N sin(theta),  N^theta = N cos(theta) - f sin(theta).
// A node survives when |det(cos(theta) I + sin(theta) S)| stays above
// tolerance (the immersion condition); masked nodes are flagged, not computed.
SurfaceField parallel_surface(const SurfaceField& sf, const SurfaceGeometry& geom, double theta,
                              bool parallel = true, double tol = 1e-9);
SurfaceField parallel_surface_ref(const SurfaceField& sf, const SurfaceGeometry& geom,
                                  double theta, double tol = 1e-9);

// Printed transformation laws (K is the intrinsic curvature, K + 1 = det S):
//   K^theta = (K cos 2theta + 2 H sin 2theta) / D,
//   H^theta = (K sin theta cos theta - H cos 2theta) / D,
//   D = K sin^2 theta - H sin 2theta + 1.
std::pair<double, double> parallel_curvatures(double K, double H, double theta, double tol = 1e-12);

// CMC -> CGC angle: tan(2 theta) = 1/H, predicted K^theta = 1/tan^2 theta - 1.
// Returns {theta, K^theta}; the H = 0 limit gives theta = pi/4.
std::pair<double, double> theta_for_cgc(double H);

// CGC -> CMC angle: tan^2 theta = 1/(K+1), predicted H^theta = 1/tan(2 theta).
// Returns {theta, H^theta}; NoRealAngle when K + 1 <= 0 (every CGC surface
// this library produces has K + 1 < 0).
std::pair<double, double> theta_for_cmc(double K);

// Geometric Cauchy data transfer along a curve: rotate (f, N) by theta.
struct CmcCurveSample {
    Mat2 f, N;
};
std::vector<CmcCurveSample> gcp_transfer(const std::vector<CmcCurveSample>& data, double theta,
                                         const std::vector<std::pair<double, double>>* kh = nullptr,
                                         double tol = 1e-9);

}  // namespace adslf
