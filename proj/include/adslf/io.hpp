#pragma once

#include <array>
#include <optional>
#include <string>

#include "adslf/surface.hpp"

namespace adslf {

// Coordinates of a gl(2,R) element in the (e0,e1,e2,e3) basis with e0 dropped:
// x0 = (a11+a22)/2, x1 = (a21-a12)/2, x2 = (a21+a12)/2, x3 = (a22-a11)/2.
std::array<double, 3> project_r3(const Mat2& m);

// Node bundle exported by every pipeline stage.  The surface part is optional
// (harmonic-only runs export nan there).
struct ExportBundle {
    GridSpec g;
    SlField nu;
    bool has_surface = false;
    Mat2Field f;
    std::vector<double> kp1, H;        // nan where invalid
    std::vector<char> causal;          // 's','l','d'; 'n' = not computed
    MaskField mask;                    // OBJ faces use only masked-in nodes
    std::vector<Mat2> curve;           // initial-curve polyline (may be empty)

    static ExportBundle harmonic_only(const GridSpec& g, const SlField& nu);
    static ExportBundle from_surface(const SurfaceField& sf, const SurfaceGeometry& geom);
};

// Schema: "x,y,nu11,nu12,nu21,nu22,f11,f12,f21,f22,Kp1,H,causal", rows
// y-major, 17 significant digits, missing values "nan".  Exact round trip.
void export_csv(const ExportBundle& b, const std::string& path);
ExportBundle import_csv(const std::string& path);

// OBJ mesh of project_r3(f) (or of nu when no surface is present): quad faces
// over the unmasked grid, "l" polylines for the initial curve and the mask
// boundary.
void export_obj(const ExportBundle& b, const std::string& path);

// Curve input schema: "t,f11,f12,f21,f22,nu11,nu12,nu21,nu22", at least 9
// uniformly spaced samples.
struct CurveCsv {
    std::vector<double> t;
    std::vector<Mat2> f;
    std::vector<SlVec> nu;
};
CurveCsv read_curve_csv(const std::string& path);
void write_curve_csv(const CurveCsv& c, const std::string& path);

}  // namespace adslf
