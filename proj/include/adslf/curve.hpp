#pragma once

#include <memory>
#include <string>
#include <vector>

#include "adslf/mat2.hpp"

namespace adslf {

// Cauchy data for the harmonic map problem: values N0 on the diagonal x = y
// and the x-derivative prescription N1, with enough derivatives for the
// potential coefficients and the oracle's first marching layer.
struct CurveEval {
    SlVec n0, n1;    // N0(t) in H^2, N1(t) spacelike
    SlVec dn0, dn1;  // t-derivatives
    SlVec d2n0;
};

class CurveData {
  public:
    virtual ~CurveData() = default;
    virtual CurveEval eval(double t) const = 0;
    virtual double tmin() const = 0;
    virtual double tmax() const = 0;
    // |t| beyond which the data are singular; +inf when entire
    virtual double singular_abs_t() const { return std::numeric_limits<double>::infinity(); }
};

// Tabulated curve (CSV import path): quartic interpolation of the samples,
// derivatives by fourth-order finite differences on the sample grid.
class TabulatedCurve final : public CurveData {
  public:
    TabulatedCurve(std::vector<double> t, std::vector<SlVec> n0, std::vector<SlVec> n1);
    CurveEval eval(double t) const override;
    double tmin() const override { return t_.front(); }
    double tmax() const override { return t_.back(); }

  private:
    std::vector<double> t_;
    std::vector<SlVec> n0_, n1_, dn0_, dn1_, d2n0_;
};

struct CauchyData1D {
    std::shared_ptr<const CurveData> curve;
    bool preset = false;  // provenance: preset | tabulated
    std::string name;

    struct Diagnostics {
        double max_ortho = 0;         // max |<N1,N0>|
        double min_n1_norm2 = 0;      // min <N1,N1>
        double max_h2_defect = 0;     // max |<N0,N0>+1|
        double min_abs_b = 0, max_abs_b = 0;
        bool b_identically_zero = false;
        bool b_sign_change = false;
        double min_nondegen_thm = 0;   // |<N1, N0'-N1>| = |b|
        double min_nondegen_coro = 0;  // |<N1, 2N0'-N1>|
    };
    Diagnostics validate(int nsamples, double tmin, double tmax) const;
};

}  // namespace adslf
