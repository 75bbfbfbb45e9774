#pragma once

#include "adslf/harmonic.hpp"
#include "adslf/surface.hpp"

namespace adslf {

// Curve data of the geometric Cauchy problem: a spacelike curve in AdS_3
// together with the prescribed Gauss map along it.
struct GcpCurveEval {
    Mat2 f;             // curve point, det = 1
    SlVec ftan, dftan;  // f^-1 f_t and its t-derivative
    SlVec nu, dnu, d2nu;
};

class GcpCurve {
  public:
    virtual ~GcpCurve() = default;
    virtual GcpCurveEval eval(double t) const = 0;
    virtual double tmin() const = 0;
    virtual double tmax() const = 0;
};

// Tabulated variant (CSV import): fourth-order FD derivatives.
class TabulatedGcpCurve final : public GcpCurve {
  public:
    TabulatedGcpCurve(std::vector<double> t, std::vector<Mat2> f, std::vector<SlVec> nu);
    GcpCurveEval eval(double t) const override;
    double tmin() const override { return t_.front(); }
    double tmax() const override { return t_.back(); }

  private:
    std::vector<double> t_;
    std::vector<Mat2> f_;
    std::vector<SlVec> ftan_, dftan_, nu_, dnu_, d2nu_;
};

struct GeometricCauchyData {
    std::shared_ptr<const GcpCurve> curve;
    double rho = 0;  // 0 < rho != 1
    std::string name;
};

struct GcpDiagnostics {
    double min_spacelike = 0;      // min <ftan,ftan>  (must be > 0)
    double max_ortho = 0;          // max |<ftan,nu>|
    double min_nondegen = 0;       // min |<nu'+(rho+1)w, nu'-(rho-1)w>|
    double nondegen_fraction = 0;  // fraction of samples above tolerance
};

struct GcpTranslation {
    CauchyData1D cd;
    std::vector<double> t;
    std::vector<SlVec> w;  // w(t) = -1/2 [nu, f^-1 f_t]
    GcpDiagnostics diag;
};

// Corollary translation N0 = nu, N1 = (rho-1)/(2 rho) (nu' + (rho+1) w).
// DegenerateData when the nondegeneracy quantity stays below tolerance on
// more than 10% of the samples; InvalidParameter for rho near 1 or <= 0.
GcpTranslation gcp_translate(const GeometricCauchyData& gcd, int nsamples, double tmin,
                             double tmax, double tol = 1e-9);

struct GcpResult {
    SlField nu;
    SurfaceField sf;
    GcpTranslation tr;
    double diag_curve_residual = 0;  // max ||f(t,t) - ftilde(t)||
    double diag_gauss_residual = 0;  // max ||nu(t,t) - nutilde(t)||
};

// Solve the harmonic Cauchy problem for the translated data, then integrate
// f^-1 df = [nu,nu_x]/(2(rho-1)) dx - [nu,nu_y]/(2(rho+1)) dy  (the Case-1
// form with r = (rho-1)/2) from f(t_c,t_c) = ftilde(t_c).
GcpResult gcp_solve(const GeometricCauchyData& gcd, const GridSpec& g, SolveOptions opt = {});

}  // namespace adslf
