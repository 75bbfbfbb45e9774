#pragma once

#include "adslf/gcp.hpp"

namespace adslf {

// Closed-form Cauchy data presets.
//
// "example-3.3": the one-variable map nu(x) = cosh x e1 + sinh x e3 restricted
// to the diagonal (N0' = N1, so the dy-potential vanishes).
//
// "example-4.2": the printed rational data.  Valid Cauchy data, but the
// induced harmonic map is a geodesic composition (nu_x parallel to nu_y), so
// it cannot feed the Case-1 reconstruction.
//
// "const-potential": constant adapted-potential data built from a single
// exp_sl flow.  The induced harmonic map is a genuine immersion; this preset
// backs the Case-1 and geometric-Cauchy runs.
//
// "example-5.7": the degenerate-case setup (x-only nu, omega family).
//
// "example-6.2": geometric Cauchy data of the Case-1 surface over
// "const-potential" with r = 2 (rho = 5).  The printed 6.2 data fail the
// orthogonality and spacelike requirements, so the preset carries the
// corrected closed forms; the printed values stay in the verification ledger.
std::shared_ptr<const CurveData> make_example33();
std::shared_ptr<const CurveData> make_example42();
std::shared_ptr<const CurveData> make_const_potential(double a0 = 1.0, double b0 = 0.5);

struct Case2Preset {
    double theta = 0;
    double A = 0, B = 0;
    Mat2 init;                       // f(0,0)
    SlVec nu(double x) const;        // cosh x e1 + sinh x e3
    Mat2 frame(double x) const;      // printed one-variable frame, det = 1
    SlVec omega(double x) const;     // ambient closed form
    Mat2 printed_f(double x, double y) const;  // target surface
    SlField nu_field(const GridSpec& g) const;
    Mat2Field frame_field(const GridSpec& g) const;
};
Case2Preset make_example57(double theta = 0.9);

struct GcpPreset {
    GeometricCauchyData gcd;
    double r = 2;  // Case-1 parameter, rho = |2r+1|
};
GcpPreset make_example62(double r = 2.0);

// Printed 6.2 curve as a GcpCurve (ledger regressions only; the data violate
// the GCP invariants).
std::shared_ptr<const GcpCurve> make_example62_printed(double r = 2.0);

struct PresetInfo {
    std::string name;
    double singular_abs_t;  // declared singular set |t| = value (inf: none)
    GridSpec default_domain;
    enum class Kind { cauchy, case2, gcp } kind;
};
const std::vector<PresetInfo>& preset_registry();
const PresetInfo* find_preset(const std::string& name);

CauchyData1D cauchy_preset(const std::string& name);

}  // namespace adslf
