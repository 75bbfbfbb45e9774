#include "adslf/presets.hpp"

namespace adslf {

namespace {

class Example33 final : public CurveData {
  public:
    CurveEval eval(double t) const override {
        const double c = std::cosh(t), s = std::sinh(t);
        CurveEval e;
        e.n0 = {c, 0, s};
        e.n1 = {s, 0, c};
        e.dn0 = e.n1;
        e.dn1 = e.n0;
        e.d2n0 = e.n0;
        return e;
    }
    double tmin() const override { return -4.0; }
    double tmax() const override { return 4.0; }
};

class Example42 final : public CurveData {
  public:
    CurveEval eval(double t) const override {
        const double t2 = t * t;
        const double d = 1.0 - t2;
        CurveEval e;
        e.n0 = {(1 + t2) / d, 0, 2 * t / d};
        e.n1 = {2 * t / (d * d), 0, (1 + t2) / (d * d)};
        e.dn0 = e.n1 * 2.0;
        e.dn1 = {(2 + 6 * t2) / (d * d * d), 0, (6 * t + 2 * t2 * t) / (d * d * d)};
        e.d2n0 = e.dn1 * 2.0;
        return e;
    }
    double tmin() const override { return -0.99; }
    double tmax() const override { return 0.99; }
    double singular_abs_t() const override { return 1.0; }
};

// Data of the frame flow X(t) = exp(t Gamma), Gamma = -(1+b0)/2 e2 + a0/2 e3:
// N0 = Ad_X e1, N1 = Ad_X e3.  Unit q, constant a = a0 and b = b0, and the
// solved map is an immersion (the p-parts stay independent for moderate a0).
class ConstPotential final : public CurveData {
  public:
    ConstPotential(double a0, double b0) : gamma_{0, -(1 + b0) / 2, a0 / 2} {}

    CurveEval eval(double t) const override {
        const Mat2 x = exp_sl(gamma_ * t);
        CurveEval e;
        e.n0 = ad_action(x, SL_E1);
        e.n1 = ad_action(x, SL_E3);
        e.dn0 = ad_action(x, bracket(gamma_, SL_E1));
        e.dn1 = ad_action(x, bracket(gamma_, SL_E3));
        e.d2n0 = ad_action(x, bracket(gamma_, bracket(gamma_, SL_E1)));
        return e;
    }
    double tmin() const override { return -3.0; }
    double tmax() const override { return 3.0; }
    SlVec gamma() const { return gamma_; }

  private:
    SlVec gamma_;
};

}  // namespace

std::shared_ptr<const CurveData> make_example33() { return std::make_shared<Example33>(); }
std::shared_ptr<const CurveData> make_example42() { return std::make_shared<Example42>(); }
std::shared_ptr<const CurveData> make_const_potential(double a0, double b0) {
    return std::make_shared<ConstPotential>(a0, b0);
}

// --- example 5.7 ----------------------------------------------------------------

SlVec Case2Preset::nu(double x) const { return {std::cosh(x), 0, std::sinh(x)}; }

Mat2 Case2Preset::frame(double x) const {
    const double rc = std::sqrt(std::cosh(x));
    return {1.0 / rc, -std::sinh(x) / rc, 0, rc};
}

SlVec Case2Preset::omega(double x) const {
    // Ad_frame (w2 e2 + w3 e3) collapses to -A nu_x - B e2
    return SlVec{-A * std::sinh(x), -B, -A * std::cosh(x)};
}

Mat2 Case2Preset::printed_f(double x, double y) const {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double f0 = ct * std::cosh((x + y) / 2), f1 = st * std::cosh((x - y) / 2);
    const double f2 = ct * std::sinh((x + y) / 2), f3 = st * std::sinh((x - y) / 2);
    return E0 * f0 + E1 * f1 + E2 * f2 + E3 * f3;
}

SlField Case2Preset::nu_field(const GridSpec& g) const {
    SlField out(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) out.at(i, j) = nu(g.coord(i));
    return out;
}

Mat2Field Case2Preset::frame_field(const GridSpec& g) const {
    Mat2Field out(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) out.at(i, j) = frame(g.coord(i));
    return out;
}

Case2Preset make_example57(double theta) {
    Case2Preset p;
    p.theta = theta;
    p.A = 0.25 * std::cos(2 * theta);
    p.B = 0.25 * std::sin(2 * theta);
    p.init = E0 * std::cos(theta) + E1 * std::sin(theta);
    return p;
}

// --- example 6.2 ----------------------------------------------------------------

namespace {

// Geometric Cauchy data of the Case-1 surface with parameter r over the
// const-potential harmonic map: the diagonal pullback of the surface form is
// Ad_X C0 dt with the constant C0 below, so the curve itself integrates a
// closed-form coefficient (done once, densely, with the same Magnus stepper).
class Example62 final : public GcpCurve {
  public:
    Example62(double r, double a0, double b0) : base_(a0, b0), r_(r) {
        const SlVec comb = SlVec{0, 0, 1.0 / (4 * r)} -
                           SlVec{0, a0 / (4 * (r + 1)), b0 / (4 * (r + 1))};
        c0_ = bracket(SL_E1, comb);
        build_table();
    }

    GcpCurveEval eval(double t) const override {
        const Mat2 x = exp_sl(base_.gamma() * t);
        GcpCurveEval e;
        const CurveEval b = base_.eval(t);
        e.nu = b.n0;
        e.dnu = b.dn0;
        e.d2nu = b.d2n0;
        e.ftan = ad_action(x, c0_);
        e.dftan = ad_action(x, bracket(base_.gamma(), c0_));
        e.f = curve_point(t);
        return e;
    }
    double tmin() const override { return -1.2; }
    double tmax() const override { return 1.2; }

  private:
    // dense table of ftilde by 4th-order Lie stepping of f' = f Ad_X C0
    void build_table() {
        const double lo = tmin(), hi = tmax();
        nt_ = 4801;
        ht_ = (hi - lo) / (nt_ - 1);
        tab_.assign(nt_, Mat2{});
        const int i0 = (nt_ - 1) / 2;
        tab_[i0] = E0;
        auto coeff = [this](double t) { return ad_action(exp_sl(base_.gamma() * t), c0_); };
        auto step = [&](const Mat2& f, double t, double h) {
            const double g1 = t + h * (0.5 - std::sqrt(3.0) / 6.0);
            const double g2 = t + h * (0.5 + std::sqrt(3.0) / 6.0);
            const SlVec a1 = coeff(g1), a2 = coeff(g2);
            const SlVec om = (a1 + a2) * (h / 2) +
                             bracket(a1, a2) * (std::sqrt(3.0) * h * h / 12.0);
            Mat2 out = f * exp_sl(om);
            return out * (1.0 / std::sqrt(out.det()));
        };
        for (int i = i0; i + 1 < nt_; ++i) tab_[i + 1] = step(tab_[i], lo + i * ht_, ht_);
        for (int i = i0; i > 0; --i) tab_[i - 1] = step(tab_[i], lo + i * ht_, -ht_);
    }

    Mat2 curve_point(double t) const {
        return interp_line<Mat2>([&](int i) { return tab_[i]; }, nt_, tmin(), ht_, t);
    }

    ConstPotential base_;
    double r_;
    SlVec c0_;
    int nt_ = 0;
    double ht_ = 0;
    std::vector<Mat2> tab_;
};

// Printed 6.2 data, kept only for ledger regressions.
class Example62Printed final : public GcpCurve {
  public:
    explicit Example62Printed(double r) : r_(r) {}
    GcpCurveEval eval(double t) const override {
        GcpCurveEval e;
        const double r = r_;
        const double d = 1 - t * t;
        e.f = {1 - t * t / (4 * r * (r + 1)), t / (2 * r), -t / (2 * (r + 1)), 1};
        e.nu = {(1 + t * t) / d, 0, 2 * t / d};
        e.dnu = SlVec{2 * t / (d * d), 0, (1 + t * t) / (d * d)} * 2.0;
        e.d2nu = SlVec{(2 + 6 * t * t) / (d * d * d), 0, (6 * t + 2 * t * t * t) / (d * d * d)} * 2.0;
        // exact f^-1 f_t of the printed curve (the printed display is its t=0 value)
        const Mat2 finv = e.f.adjugate() * (1.0 / e.f.det());
        const Mat2 ft = {-t / (2 * r * (r + 1)), 1 / (2 * r), -1 / (2 * (r + 1)), 0};
        e.ftan = sl_part(finv * ft);
        e.dftan = {};  // not needed for the regressions
        return e;
    }
    double tmin() const override { return -0.9; }
    double tmax() const override { return 0.9; }

  private:
    double r_;
};

}  // namespace

GcpPreset make_example62(double r) {
    GcpPreset p;
    p.r = r;
    p.gcd.curve = std::make_shared<Example62>(r, 1.0, 0.5);
    p.gcd.rho = std::fabs(2 * r + 1);
    p.gcd.name = "example-6.2";
    return p;
}

std::shared_ptr<const GcpCurve> make_example62_printed(double r) {
    return std::make_shared<Example62Printed>(r);
}

// --- registry --------------------------------------------------------------------

const std::vector<PresetInfo>& preset_registry() {
    static const std::vector<PresetInfo> reg = {
        {"example-3.3", std::numeric_limits<double>::infinity(), {-1.0, 1.0, 201},
         PresetInfo::Kind::cauchy},
        {"example-4.2", 1.0, {-0.5, 0.5, 201}, PresetInfo::Kind::cauchy},
        {"const-potential", std::numeric_limits<double>::infinity(), {-0.5, 0.5, 201},
         PresetInfo::Kind::cauchy},
        {"example-5.7", std::numeric_limits<double>::infinity(), {-1.0, 1.0, 201},
         PresetInfo::Kind::case2},
        {"example-6.2", std::numeric_limits<double>::infinity(), {-0.5, 0.5, 201},
         PresetInfo::Kind::gcp},
    };
    return reg;
}

const PresetInfo* find_preset(const std::string& name) {
    for (const auto& p : preset_registry())
        if (p.name == name) return &p;
    return nullptr;
}

CauchyData1D cauchy_preset(const std::string& name) {
    CauchyData1D cd;
    cd.preset = true;
    cd.name = name;
    if (name == "example-3.3")
        cd.curve = make_example33();
    else if (name == "example-4.2")
        cd.curve = make_example42();
    else if (name == "const-potential")
        cd.curve = make_const_potential();
    else
        throw UsageError("unknown Cauchy preset: " + name);
    return cd;
}

}  // namespace adslf
