#pragma once

#include <functional>

#include "adslf/curve.hpp"
#include "adslf/grid.hpp"
#include "adslf/loop.hpp"

namespace adslf {

// --- frames ------------------------------------------------------------------

// Deterministic K in SL(2,R) with Ad_K e1 = n: hyperbolic rotation about e3
// followed by one about e2 (two-angle closed form fixing the stabilizer gauge).
Mat2 frame_at_point(const SlVec& n);

// Full curve frame: Ad_K e1 = n, Ad_K e3 = w for unit spacelike w orthogonal
// to n.  Adds the e1-rotation that aligns e3 with w.
Mat2 curve_frame(const SlVec& n, const SlVec& w);

// --- Maurer-Cartan split -----------------------------------------------------

struct McSplit {
    SlField Uk, Up, Vk, Vp;  // k-parts along e1, p-parts in span{e2,e3}
};

struct AdaptedFrame {
    Mat2Field F;
    McSplit ms;
};

// Pointwise frame with Ad_F e1 = nu and Ad_F e3 parallel to nu_x, sign-fixed
// for continuity, plus the finite-difference Maurer-Cartan split.
AdaptedFrame adapted_frame(const SlField& nu, double tol = 1e-7);

// hat-alpha: the lambda-dependent 1-form coefficients
//   dx-part: Uk + lambda Up (degrees {0,1}),
//   dy-part: Vk + lambda^{-1} Vp (degrees {-1,0}).
std::pair<LaurentLoop, LaurentLoop> hat_alpha(const SlVec& uk, const SlVec& up,
                                              const SlVec& vk, const SlVec& vp);

// Residuals of the split Maurer-Cartan system
//   R1 = dUk/dy - dVk/dx - [Up,Vp]
//   R2 = dUp/dy - [Up,Vk]
//   R3 = dVp/dx - [Uk,Vp]
// by centered second-order differences; max norms over interior nodes.
struct McResiduals {
    double r1 = 0, r2 = 0, r3 = 0;
    double max() const { return std::max(r1, std::max(r2, r3)); }
};
McResiduals split_mc_residual(const McSplit& ms);

// --- coefficient functions along the curve ------------------------------------

struct AbcCoefficients {
    std::vector<double> t, a, b, c;
};

// a = <N0',[N1,N0]>, b = <N1,N0'-N1>, c = a_t/(2b) with
// a_t = <N0'-N1,[N1',N0]>.  SingularData where |b| is below tolerance.
AbcCoefficients abc_from_data(const CauchyData1D& cd, const std::vector<double>& tgrid,
                              double tol = 1e-12);

// c += theta'(t); a, b untouched.
void gauge_shift(AbcCoefficients& abc, const std::function<double(double)>& theta_prime);

// Diagonal potential coefficient of the extended frame, generalized to
// non-unit |N1| (reduces to the printed normalized form when q = 1):
//   gamma1 e1   +   lambda (-q/2) e2   +   lambda^-1 Vp,
// where q^2 = <N1,N1> and Vp tracks N0' - N1 in the moving frame.
struct PotentialCoeff {
    double gamma1 = 0, q = 1;
    SlVec up, vp;
    SlVec lambda1() const { return SlVec{gamma1, 0, 0} + up + vp; }
};
PotentialCoeff diag_potential(const CurveData& cd, double t);

// Potential with the printed normalized structure from explicit (a,b,c)
// coefficients: c e1 - 1/2 e2 lambda + 1/2 (a e3 - b e2) lambda^-1.
PotentialCoeff potential_from_abc(double a, double b, double c);

// --- integration --------------------------------------------------------------

// Fourth-order Lie-group integration (two-point Gauss Magnus) of
// X^-1 dX = A(t) dt at lambda = 1 along the axis grid, det-renormalized per
// step.  i0 is the node carrying the initial value.
std::vector<Mat2> integrate_potential(const std::function<SlVec(double)>& coeff,
                                      const Mat2& init, const GridSpec& axis, int i0);

// --- solvers -------------------------------------------------------------------

struct SolveOptions {
    int order = 8;           // loop truncation order
    double newton_tol = 1e-13;
    int newton_maxit = 50;
    bool parallel = true;
    double tol = 1e-9;       // membership / data gates
};

struct DalembertResult {
    SlField nu;
    Mat2Field frame;  // F at lambda = 1, det-normalized
};

// d'Alembert construction: potential pair from the diagonal data, loop
// integration of X and Y from the common frame K, Birkhoff factorization of
// Phi = X^-1 Y per node (grading-compatible normalization), frame X H- at
// lambda = 1.
DalembertResult dalembert_solve(const CauchyData1D& cd, const GridSpec& g, SolveOptions opt = {});

// Low-level entry: solve from an explicit diagonal potential coefficient and
// base frame (gauge experiments, custom potentials).
DalembertResult dalembert_custom(const std::function<PotentialCoeff(double)>& pot, const Mat2& K,
                                 const GridSpec& g, SolveOptions opt = {});

// Cross-check pipeline: everything at lambda = 1 with the pointwise big-cell
// factorization of Phi (the paper's shortcut).  Reported against the loop
// pipeline in the verification ledger.
DalembertResult dalembert_lambda1(const CauchyData1D& cd, const GridSpec& g, SolveOptions opt = {});

// Independent characteristic-rectangle marching oracle for
//   nu_xy = <nu_x,nu_y> nu,  nu(t,t) = N0,  nu_x(t,t) = N1:
// second-order scheme, two fixed-point passes per cell, renormalized to H^2.
SlField characteristic_oracle(const CauchyData1D& cd, const GridSpec& g, bool parallel = true);
// Serial reference implementation (kept for bitwise comparison in tests).
SlField characteristic_oracle_ref(const CauchyData1D& cd, const GridSpec& g);

// max over interior nodes of ||[nu, nu_xy]|| with centered second-order
// differences; O(h^2) for true solutions.
double harmonicity_residual(const SlField& nu, bool parallel = true);
double harmonicity_residual_ref(const SlField& nu);

}  // namespace adslf
