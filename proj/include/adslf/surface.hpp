#pragma once

#include <array>

#include "adslf/grid.hpp"
#include "adslf/harmonic.hpp"

namespace adslf {

// Spacelike surface patch: immersion f into AdS_3 = SL(2,R) with Gauss map nu
// and normal N = f nu (left translation).
struct SurfaceField {
    GridSpec g;
    Mat2Field f, N;
    SlField nu;
    MaskField mask;              // 1 = computed node
    double path_residual = 0;    // row-first vs column-first corner difference
};

enum class Causal : char { spacelike = 's', lorentzian = 'l', degenerate = 'd' };

struct SurfaceGeometry {
    GridSpec g;
    std::vector<std::array<double, 3>> I;   // E, F, G
    std::vector<std::array<double, 3>> II;  // L, M, N
    std::vector<std::array<double, 4>> S;   // shape operator, row-major
    std::vector<double> Kext;               // det S; "K+1" of the curvature relation
    std::vector<double> H;                  // trace S / 2
    std::vector<Causal> causal;
    std::vector<uint8_t> valid;             // interior node with invertible I
    int margin = 0;

    size_t idx(int i, int j) const { return (size_t)j * g.n + i; }

    struct Stats {
        double mean = 0, stddev = 0, minv = 0, maxv = 0;
        int count = 0;
    };
    Stats kp1_stats() const;   // over valid nodes, of Kext ("K+1")
    Stats h_stats() const;
};

// Ambient fundamental forms by fourth-order differences:
//   I_ij = <d_i f, d_j f>,  II_ij = <d_i d_j f, N>.
// Nodes with |det I| under tolerance get flagged, never aborted.
SurfaceGeometry fundamental_forms(const SurfaceField& sf, bool parallel = true, double tol = 1e-10);
SurfaceGeometry fundamental_forms_ref(const SurfaceField& sf, double tol = 1e-10);

// --- reconstructions ----------------------------------------------------------

// Coefficients of the sl-valued 1-form f^-1 df = Bx dx + By dy.
class BetaProvider {
  public:
    virtual ~BetaProvider() = default;
    virtual SlVec bx(double x, double y) const = 0;
    virtual SlVec by(double x, double y) const = 0;
};

// Lie-group integration of f^-1 df = beta over the grid: along the base row
// first, then along each column (columns run in parallel).  Per-step det
// renormalization; base node (i0,j0) carries init.
Mat2Field integrate_beta(const BetaProvider& beta, const GridSpec& g, int i0, int j0,
                         const Mat2& init, bool parallel = true, bool column_first = false);

struct Case1Options {
    double tol = 1e-7;       // immersion gates
    bool parallel = true;
    int base_i = -1, base_j = -1;  // default: grid center
};

// Case 1 (nu an immersion): f^-1 df = (1/4r)[nu,nu_x]dx - (1/(4(r+1)))[nu,nu_y]dy,
// constant curvature K+1 = -(2r+1)^2.
SurfaceField reconstruct_case1(const SlField& nu, double r, const Mat2& init,
                               Case1Options opt = {});

// omega data for the degenerate case: ambient sl-valued field orthogonal to nu.
struct OmegaField {
    GridSpec g;
    SlField omega;
    double A = 0, B = 0;
};

// Closed-form omega family for the one-variable frame: coefficients
//   w2 = -A tanh x - B sech x,  w3 = -A sech x + B tanh x,
// transported by Ad_F of the supplied frame field.
OmegaField solve_omega(const Mat2Field& frame, double A, double B);

// Case 2 (nu_y = 0): f^-1 df = -1/4 [nu,nu_x] dx + [nu,omega] dy, curvature
// K+1 = -1.  DegenerateOmega when [nu_x, omega] degenerates (B = 0 family).
SurfaceField reconstruct_case2(const SlField& nu, const OmegaField& om, const Mat2& init,
                               Case1Options opt = {});

// --- frame ratio diagnostics ---------------------------------------------------

// Recover r, s with U_p = r omega1, V_p = s omega2 where f^-1 f_x = Ad_F omega1,
// f^-1 f_y = Ad_F omega2.  Least-squares scalar fit per node; 1 + r + s = 0 is
// forced by compatibility and r is constant iff nu is harmonic w.r.t. II.
struct FrameRatios {
    Field2<double> r, s;
    double max_one_r_s = 0;   // max |1 + r + s| over interior
    double r_mean = 0, r_stddev = 0;
    double max_fit_residual = 0;
    int margin = 2;
};
FrameRatios frame_ratios(const SurfaceField& sf, const AdaptedFrame& af, double tol = 1e-10);

}  // namespace adslf
