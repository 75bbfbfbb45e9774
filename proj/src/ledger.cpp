#include "adslf/ledger.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "adslf/gcp.hpp"
#include "adslf/parallel_surface.hpp"
#include "adslf/presets.hpp"

namespace adslf {

const char* to_string(LedgerStatus s) {
    switch (s) {
        case LedgerStatus::match: return "match";
        case LedgerStatus::mismatch: return "mismatch";
        case LedgerStatus::property_pass: return "property-pass";
        case LedgerStatus::property_fail: return "property-fail";
    }
    return "?";
}

void Ledger::property(const std::string& id, const std::string& source, double measured,
                      double tol, double expected) {
    entries.push_back({id, source,
                       std::fabs(measured - expected) <= tol ? LedgerStatus::property_pass
                                                             : LedgerStatus::property_fail,
                       measured, expected, tol});
}

void Ledger::regression(const std::string& id, const std::string& source, double measured,
                        double expected, double tol) {
    entries.push_back({id, source,
                       std::fabs(measured - expected) <= tol ? LedgerStatus::match
                                                             : LedgerStatus::mismatch,
                       measured, expected, tol});
}

void Ledger::regression_dev(const std::string& id, const std::string& source, double deviation,
                            double tol) {
    regression(id, source, deviation, 0.0, tol);
}

bool Ledger::all_properties_pass() const {
    for (const auto& e : entries)
        if (e.status == LedgerStatus::property_fail) return false;
    return true;
}

int Ledger::count(LedgerStatus s) const {
    int n = 0;
    for (const auto& e : entries) n += e.status == s;
    return n;
}

void Ledger::write_csv(const std::string& path) const {
    std::string out = "id,source,status,measured,expected,tol\n";
    char buf[160];
    for (const auto& e : entries) {
        out += e.id;
        out += ',';
        out += e.source;
        out += ',';
        out += to_string(e.status);
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g\n", e.measured, e.expected, e.tol);
        out += buf;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("ledger: cannot open " + path);
    f << out;
    if (!f) throw IoError("ledger: write failed for " + path);
}

std::string Ledger::to_text() const {
    std::string out;
    char buf[256];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof buf, "%-34s %-28s %-13s measured=%-12.4g expected=%-10.4g tol=%g\n",
                      e.id.c_str(), e.source.c_str(), to_string(e.status), e.measured, e.expected,
                      e.tol);
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

double eff(const VerifyOptions& o, double def) { return o.tol_override.value_or(def); }

struct Rng {
    std::mt19937 gen;
    explicit Rng(uint32_t seed) : gen(seed) {}
    double uni(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    SlVec vec(double s = 1.5) { return {uni(-s, s), uni(-s, s), uni(-s, s)}; }
    Mat2 mat(double s = 2.0) { return {uni(-s, s), uni(-s, s), uni(-s, s), uni(-s, s)}; }
    Mat2 sl2() { return exp_sl(vec(0.8)); }
};

Mat2 exp_series(const Mat2& m, int terms = 30) {
    Mat2 sum = E0, pw = E0;
    for (int k = 1; k <= terms; ++k) {
        pw = pw * m * (1.0 / k);
        sum += pw;
    }
    return sum;
}

// printed closed forms of the worked examples ---------------------------------

Mat2 printed_X33(double x) {
    const double rc = std::sqrt(std::cosh(x));
    return {rc, -std::sinh(x) / rc, 0, 1.0 / rc};
}
SlVec printed_A33(double x) { return SlVec{0, -1.0 / std::cosh(x), std::tanh(x)} * 0.5; }

Mat2 printed_F57(double x) {
    const double rc = std::sqrt(std::cosh(x));
    return {1.0 / rc, -std::sinh(x) / rc, 0, rc};
}
SlVec printed_alpha57(double x) {
    return SlVec{1.0 / std::cosh(x), -1.0 / std::cosh(x), std::tanh(x)} * 0.5;
}

SlVec printed_nu33(double x) { return {std::cosh(x), 0, std::sinh(x)}; }

SlVec printed_nu42(double x, double y) {
    const double d = 1 - x * y;
    return {(1 + x * y) / d, 0, (x + y) / d};
}
SlVec normalized_nu42(double x, double y) {
    const double s = std::sqrt((1 - x * x) * (1 - y * y));
    return {(1 + x * y) / s, 0, (x + y) / s};
}
Mat2 printed_X42(double x) {
    const double s = std::sqrt(1 - x * x);
    return {1 / s, x / s, x / s, 1 / s};
}
Mat2 printed_f55(double x, double y, double r) {
    return (E0 + Ep * (x / (2 * r))) * (E0 - Em * (y / (2 * (r + 1))));
}
Mat2 printed_ftan62(double r) { return {0, 1 / (2 * r), -1 / (2 * (r + 1)), 0}; }

// -------------------------------------------------------------------------------

void check_algebra(Ledger& led, const VerifyOptions& o) {
    Rng rng(12001);

    {  // metric table and <X,X> = -det X
        double dev = 0;
        dev = std::max(dev, std::fabs(gl_inner(E0, E0) + 1));
        dev = std::max(dev, std::fabs(gl_inner(E1, E1) + 1));
        dev = std::max(dev, std::fabs(gl_inner(E2, E2) - 1));
        dev = std::max(dev, std::fabs(gl_inner(E3, E3) - 1));
        led.regression_dev("algebra/metric-signature", "matrix-model", dev, 1e-15);

        double worst = 0;
        for (int k = 0; k < 1000; ++k) {
            const Mat2 m = rng.mat();
            worst = std::max(worst, std::fabs(gl_inner(m, m) + m.det()));
        }
        led.property("algebra/inner-eq-neg-det", "matrix-model", worst, eff(o, 1e-14));
    }
    {  // bracket table
        double dev = 0;
        dev = std::max(dev, (bracket(SL_E1, SL_E2) - SlVec{0, 0, 2}).norm());
        dev = std::max(dev, (bracket(SL_E2, SL_E3) - SlVec{-2, 0, 0}).norm());
        dev = std::max(dev, (bracket(SL_E3, SL_E1) - SlVec{0, 2, 0}).norm());
        led.regression_dev("algebra/bracket-table", "lie-structure", dev, 1e-15);
    }
    {  // printed nilpotent combination vs the matrices every computation uses
        const Mat2 printed = (E2 + E3) * 0.5;
        led.regression_dev("algebra/nilpotent-printed-combo", "ex-5.5", (printed * printed).norm(),
                           1e-12);
        double dev = std::max((Ep * Ep).norm(), (Em * Em).norm());
        const double a = 0.7;
        dev = std::max(dev, (exp_series(Ep * a) - (E0 + Ep * a)).norm());
        led.regression_dev("algebra/nilpotent-matrices", "ex-5.5", dev, 1e-12);
    }
    {  // bracket/metric identities on admissible triples
        double worst = 0;
        int done = 0;
        while (done < 1000) {
            const SlVec x = rng.vec(), y = rng.vec();
            const double gxx = sl_inner(x, x), gxy = sl_inner(x, y), gyy = sl_inner(y, y);
            const double det = gxx * gyy - gxy * gxy;
            if (std::fabs(det) < 5e-2) continue;
            const SlVec z0 = rng.vec();
            const double zx = sl_inner(z0, x), zy = sl_inner(z0, y);
            const double alpha = (zx * gyy - zy * gxy) / det;
            const double beta = (zy * gxx - zx * gxy) / det;
            const SlVec z = z0 - x * alpha - y * beta;
            worst = std::max(worst, bracket_identities_check(x, y, z, 1e-6).max());
            ++done;
        }
        led.property("algebra/bracket-identities", "lie-structure", worst, eff(o, 1e-12));
    }
    {  // Ad isometry and equivariance
        double worst = 0;
        for (int k = 0; k < 300; ++k) {
            const Mat2 g = rng.sl2();
            const SlVec x = rng.vec(), y = rng.vec();
            const SlVec gx = ad_action(g, x), gy = ad_action(g, y);
            worst = std::max(worst, std::fabs(sl_inner(gx, gy) - sl_inner(x, y)));
            worst = std::max(worst, (ad_action(g, bracket(x, y)) - bracket(gx, gy)).norm());
        }
        led.property("algebra/ad-isometry", "lie-structure", worst, eff(o, 1e-12));
    }
    {  // closed-form exponential vs truncated series
        double worst = 0;
        for (int k = 0; k < 300; ++k) {
            const SlVec x = rng.vec(1.15);  // ||X|| <= 2
            worst = std::max(worst, (exp_sl(x) - exp_series(to_mat(x))).norm());
        }
        led.property("algebra/exp-closed-form", "lie-structure", worst, eff(o, 1e-12));
    }
}

void check_loops(Ledger& led, const VerifyOptions& o) {
    Rng rng(12002);

    {  // evaluation homomorphism
        double worst = 0;
        for (int k = 0; k < 100; ++k) {
            LaurentLoop a(-2, 2), b(-1, 3);
            for (int d = -2; d <= 2; ++d) a.at(d) = rng.mat(0.5);
            for (int d = -1; d <= 3; ++d) b.at(d) = rng.mat(0.5);
            const LaurentLoop ab = loop_mul(a, b, 8);
            for (double lam : {0.7, 1.0, 2.0})
                worst = std::max(worst, (ab.eval(lam) - a.eval(lam) * b.eval(lam)).norm());
        }
        led.property("loops/mul-eval", "loop-algebra", worst, eff(o, 1e-11));
    }
    {  // pointwise big-cell factorization: multiply back, 1e4 samples
        double worst = 0;
        int rejected = 0;
        for (int k = 0; k < 10000; ++k) {
            Mat2 p = rng.mat(2.0);
            if (std::fabs(p.a11) < 1e-3) {
                ++rejected;
                continue;
            }
            const BigCellFactors f = big_cell_factor(p);
            worst = std::max(worst, (f.lower * f.upper - p).max_abs());
        }
        led.property("loops/big-cell-multiply-back", "factorization", worst, eff(o, 1e-13));
        bool rejects = false;
        try {
            big_cell_factor(Mat2{0, 1, -1, 0});
        } catch (const NotInBigCell&) {
            rejects = true;
        }
        led.property("loops/big-cell-rejects-p11-zero", "factorization", rejects ? 0.0 : 1.0,
                     0.5);
    }
    {  // Birkhoff on random near-identity loops of order <= 8
        double worst = 0, worst_norm = 0;
        for (int k = 0; k < 1000; ++k) {
            const int n = 1 + (int)(rng.uni(0, 7.999));
            LaurentLoop p(-n, n);
            p.at(0) = E0;
            for (int d = -n; d <= n; ++d) p.at(d) += rng.mat(0.1 / (1 + std::abs(d)));
            const BirkhoffFactors f = birkhoff_factor(p, n);
            const LaurentLoop diff = loop_add(mul_trunc(f.hm, f.hp, n), loop_scale(p, -1.0));
            worst = std::max(worst, diff.norm());
            const Mat2 hm0 = f.hm.coeff(0);
            worst_norm = std::max({worst_norm, std::fabs(hm0.a11 - 1), std::fabs(hm0.a12),
                                   std::fabs(hm0.a22 - 1), std::fabs(f.hp.coeff(0).a21)});
        }
        led.property("loops/birkhoff-multiply-back", "factorization", worst, eff(o, 1e-10));
        led.property("loops/birkhoff-normalization", "factorization", worst_norm, 1e-15);
    }
    {  // lambda = 1 shortcut vs loop factorization
        SolveOptions opt;
        opt.parallel = o.parallel;
        {
            const CauchyData1D cd = cauchy_preset("example-3.3");
            const GridSpec g{-0.5, 0.5, 81};
            const auto loop = dalembert_solve(cd, g, opt);
            const auto l1 = dalembert_lambda1(cd, g, opt);
            double dev = 0;
            for (size_t k = 0; k < loop.nu.a.size(); ++k)
                dev = std::max(dev, (loop.nu.a[k] - l1.nu.a[k]).norm());
            led.regression_dev("loops/lambda1-vs-loop/example-3.3", "ex-3.3", dev, 1e-7);
        }
        {
            const CauchyData1D cd = cauchy_preset("example-4.2");
            const GridSpec g{-0.4, 0.4, 81};
            const auto loop = dalembert_solve(cd, g, opt);
            const auto l1 = dalembert_lambda1(cd, g, opt);
            double dev = 0;
            for (size_t k = 0; k < loop.nu.a.size(); ++k)
                dev = std::max(dev, (loop.nu.a[k] - l1.nu.a[k]).norm());
            led.regression_dev("loops/lambda1-vs-loop/example-4.2", "ex-4.2", dev, 1e-7);
        }
    }
}

void check_harmonic(Ledger& led, const VerifyOptions& o) {
    SolveOptions opt;
    opt.parallel = o.parallel;

    {  // printed potential does not integrate to the printed frame (it cannot:
       // the printed frame is triangular, so its Maurer-Cartan form is
       // triangular, while the printed coefficient is not)
        const GridSpec ax{-1.0, 1.0, 201};
        const auto X = integrate_potential(printed_A33, E0, ax, ax.center());
        double dev = 0;
        for (int i = 0; i < ax.n; ++i) dev = std::max(dev, (X[i] - printed_X33(ax.coord(i))).norm());
        led.regression_dev("harmonic/one-potential-frame", "ex-3.3", dev, 1e-8);
    }
    {  // the one-variable frame/Maurer-Cartan pair of the omega example is
       // consistent, and the integrator reproduces it to full order
        const GridSpec ax{-1.0, 1.0, 201};
        const auto F = integrate_potential(printed_alpha57, E0, ax, ax.center());
        double dev = 0;
        for (int i = 0; i < ax.n; ++i) dev = std::max(dev, (F[i] - printed_F57(ax.coord(i))).norm());
        led.regression_dev("harmonic/one-frame-mc-pair", "ex-5.7", dev, 1e-8);
    }
    {  // printed rational-example coefficients
        const CauchyData1D cd = cauchy_preset("example-4.2");
        std::vector<double> ts;
        for (int k = 0; k <= 16; ++k) ts.push_back(-0.8 + 0.1 * k);
        const AbcCoefficients abc = abc_from_data(cd, ts);
        double dev_b = 0, dev_a = 0;
        for (size_t k = 0; k < ts.size(); ++k) {
            const double d = 1 - ts[k] * ts[k];
            dev_b = std::max(dev_b, std::fabs(abc.b[k] - 1 / (d * d)));
            dev_a = std::max(dev_a, std::fabs(abc.a[k] - 2 * ts[k] / (d * d)));
        }
        led.regression_dev("harmonic/abc-b-printed", "ex-4.2", dev_b, 1e-10);
        led.regression_dev("harmonic/abc-a-printed", "ex-4.2", dev_a, 1e-10);
        // the two printed expressions for a differ by a factor 2 on generic
        // data; compare the inner-product formula against the frame value a0
        const double a_frame = 1.0;
        const CauchyData1D cp = cauchy_preset("const-potential");
        const AbcCoefficients abc2 = abc_from_data(cp, ts);
        double ratio_dev = 0;
        for (size_t k = 0; k < ts.size(); ++k)
            ratio_dev = std::max(ratio_dev, std::fabs(abc2.a[k] / a_frame - 1.0));
        led.regression_dev("harmonic/a-formula-vs-frame", "coefficient-formulas", ratio_dev, 1e-9);
    }
    {  // printed derivative formula for a on generic analytic data
        std::vector<double> ts;
        std::vector<SlVec> n0s, n1s;
        const int n = 401;
        for (int k = 0; k < n; ++k) {
            const double t = -1.0 + 2.0 * k / (n - 1);
            const Mat2 x = exp_sl(SlVec{0, -0.6, 0.4} * t) * exp_sl(SlVec{0, 0.2, -0.3} * (t * t));
            const double q = 1.0 + 0.3 * std::sin(t);
            ts.push_back(t);
            n0s.push_back(ad_action(x, SL_E1));
            n1s.push_back(ad_action(x, SL_E3) * q);
        }
        CauchyData1D cd;
        cd.curve = std::make_shared<TabulatedCurve>(ts, n0s, n1s);
        std::vector<double> probe;
        for (int k = 40; k < n - 40; k += 20) probe.push_back(ts[k]);
        const AbcCoefficients abc = abc_from_data(cd, probe);
        double dev = 0;
        for (size_t k = 1; k + 1 < probe.size(); ++k) {
            const double da = (abc.a[k + 1] - abc.a[k - 1]) / (probe[k + 1] - probe[k - 1]);
            const CurveEval e = cd.curve->eval(probe[k]);
            const double ax = sl_inner(e.dn0 - e.n1, bracket(e.dn1, e.n0));
            dev = std::max(dev, std::fabs(da - ax));
        }
        led.regression_dev("harmonic/ax-formula", "coefficient-formulas", dev, 1e-2);
    }
    {  // solver reproduces the printed one-variable map
        const CauchyData1D cd = cauchy_preset("example-3.3");
        const GridSpec g{-0.5, 0.5, 101};
        const auto res = dalembert_solve(cd, g, opt);
        double dev = 0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                dev = std::max(dev, (res.nu.at(i, j) - printed_nu33(g.coord(i))).norm());
        led.regression_dev("harmonic/solution-printed-nu", "ex-3.3", dev, 1e-7);
        led.property("harmonic/one-variable-harmonic", "ex-3.3",
                     harmonicity_residual(res.nu, o.parallel), eff(o, 1e-3));
    }
    {  // printed rational solution: raw vs normalized
        const CauchyData1D cd = cauchy_preset("example-4.2");
        const GridSpec g{-0.5, 0.5, 101};
        const auto res = dalembert_solve(cd, g, opt);
        double h2dev = 0, raw = 0, normd = 0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const double x = g.coord(i), y = g.coord(j);
                const SlVec p = printed_nu42(x, y);
                h2dev = std::max(h2dev, std::fabs(sl_inner(p, p) + 1));
                raw = std::max(raw, (res.nu.at(i, j) - p).norm());
                normd = std::max(normd, (res.nu.at(i, j) - normalized_nu42(x, y)).norm());
            }
        led.regression_dev("harmonic/printed-nu-in-h2", "ex-4.2", h2dev, 1e-12);
        led.regression_dev("harmonic/printed-nu-vs-solver", "ex-4.2", raw, 1e-6);
        led.regression_dev("harmonic/normalized-nu-vs-solver", "ex-4.2", normd, 1e-6);
        // printed lambda=1 frame of the same example
        auto coeff = [&](double t) { return diag_potential(*cd.curve, t).lambda1(); };
        const CurveEval ec = cd.curve->eval(0.0);
        const Mat2 K = curve_frame(ec.n0, ec.n1);
        const GridSpec ax{-0.5, 0.5, 101};
        const auto X = integrate_potential(coeff, K, ax, ax.center());
        double xdev = 0;
        for (int i = 0; i < ax.n; ++i) xdev = std::max(xdev, (X[i] - printed_X42(ax.coord(i))).norm());
        led.regression_dev("harmonic/printed-X-vs-integrated", "ex-4.2", xdev, 1e-8);
    }
    {  // solver vs characteristic oracle, data reproduction, membership
        for (const char* name : {"example-3.3", "example-4.2", "const-potential"}) {
            const CauchyData1D cd = cauchy_preset(name);
            const GridSpec g{-0.5, 0.5, 101};
            const auto res = dalembert_solve(cd, g, opt);
            const auto orc = characteristic_oracle(cd, g, o.parallel);
            double agree = 0, mem = 0, data0 = 0, data1 = 0;
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i) {
                    agree = std::max(agree, (res.nu.at(i, j) - orc.at(i, j)).norm());
                    mem = std::max(mem, std::fabs(sl_inner(res.nu.at(i, j), res.nu.at(i, j)) + 1));
                }
            for (int i = 0; i < g.n; ++i) {
                const CurveEval e = cd.curve->eval(g.coord(i));
                data0 = std::max(data0, (res.nu.at(i, i) - e.n0).norm());
                const SlVec nx = fd_dx(res.nu, i, i, 4);
                data1 = std::max(data1, (nx - e.n1).norm());
            }
            const std::string p = std::string("harmonic/") + name;
            led.property(p + "/oracle-agreement", name, agree, eff(o, 2e-5));
            led.property(p + "/h2-membership", name, mem, eff(o, 1e-9));
            led.property(p + "/diagonal-value", name, data0, eff(o, 1e-8));
            led.property(p + "/diagonal-derivative", name, data1, eff(o, 4e-5));
        }
    }
    {  // split Maurer-Cartan residual decay on solver output
        const CauchyData1D cd = cauchy_preset("const-potential");
        McResiduals r[2];
        const int ns[2] = {51, 101};
        for (int k = 0; k < 2; ++k) {
            const GridSpec g{-0.5, 0.5, ns[k]};
            const auto res = dalembert_solve(cd, g, opt);
            r[k] = split_mc_residual(adapted_frame(res.nu).ms);
        }
        const double order = std::min({std::log2(r[0].r1 / r[1].r1), std::log2(r[0].r2 / r[1].r2),
                                       std::log2(r[0].r3 / r[1].r3)});
        led.property("harmonic/split-mc-order", "split-mc-system", order, 0.7, 2.6);
        // non-harmonic control field keeps a residual
        const GridSpec g{-0.5, 0.5, 101};
        SlField bad(g);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const double u = g.coord(i) + g.coord(j) + 0.3 * g.coord(i) * g.coord(j);
                bad.at(i, j) = {std::cosh(u), std::sinh(u), 0};
            }
        const McResiduals rb = split_mc_residual(adapted_frame(bad).ms);
        led.property("harmonic/split-mc-detects-nonharmonic", "split-mc-system",
                     std::max(rb.r2, rb.r3) > 1e-2 ? 0.0 : 1.0, 0.5);
    }
    {  // full-pipeline equivariance under a global isometry
        const CauchyData1D cd = cauchy_preset("const-potential");
        const Mat2 g0 = exp_sl({0.1, 0.3, -0.2});
        class Conj final : public CurveData {
          public:
            Conj(std::shared_ptr<const CurveData> b, Mat2 g) : b_(std::move(b)), g_(g) {}
            CurveEval eval(double t) const override {
                CurveEval e = b_->eval(t);
                e.n0 = ad_action(g_, e.n0);
                e.n1 = ad_action(g_, e.n1);
                e.dn0 = ad_action(g_, e.dn0);
                e.dn1 = ad_action(g_, e.dn1);
                e.d2n0 = ad_action(g_, e.d2n0);
                return e;
            }
            double tmin() const override { return b_->tmin(); }
            double tmax() const override { return b_->tmax(); }

          private:
            std::shared_ptr<const CurveData> b_;
            Mat2 g_;
        };
        CauchyData1D cj;
        cj.curve = std::make_shared<Conj>(cd.curve, g0);
        cj.preset = true;
        const GridSpec g{-0.5, 0.5, 61};
        const auto base = dalembert_solve(cd, g, opt);
        const auto conj = dalembert_solve(cj, g, opt);
        double dev = 0;
        for (size_t k = 0; k < base.nu.a.size(); ++k)
            dev = std::max(dev, (conj.nu.a[k] - ad_action(g0, base.nu.a[k])).norm());
        led.property("harmonic/isometry-equivariance", "pipeline", dev, eff(o, 1e-8));
    }
    {  // explicit-coefficient path consistency, and the printed c-only shift
        const CauchyData1D cd = cauchy_preset("const-potential");
        const GridSpec g{-0.5, 0.5, 61};
        const auto base = dalembert_solve(cd, g, opt);
        const CurveEval ec = cd.curve->eval(0.0);
        const Mat2 K = curve_frame(ec.n0, ec.n1);
        const double a0 = 1.0, b0 = 0.5;
        auto pot = [&](double) { return potential_from_abc(a0, b0, 0.0); };
        const auto viaabc = dalembert_custom(pot, K, g, opt);
        double dev = 0;
        for (size_t k = 0; k < base.nu.a.size(); ++k)
            dev = std::max(dev, (viaabc.nu.a[k] - base.nu.a[k]).norm());
        led.property("harmonic/abc-path-consistency", "coefficient-formulas", dev, eff(o, 1e-9));

        auto pot_shift = [&](double t) { return potential_from_abc(a0, b0, 0.25 * std::cos(t)); };
        const auto shifted = dalembert_custom(pot_shift, K, g, opt);
        double sdev = 0;
        for (size_t k = 0; k < base.nu.a.size(); ++k)
            sdev = std::max(sdev, (shifted.nu.a[k] - base.nu.a[k]).norm());
        led.regression_dev("harmonic/c-shift-invariance-claim", "gauge-transform", sdev, 1e-7);
    }
}

void check_surfaces(Ledger& led, const VerifyOptions& o) {
    SolveOptions opt;
    opt.parallel = o.parallel;

    {  // Case 1 on the immersive preset
        const CauchyData1D cd = cauchy_preset("const-potential");
        const GridSpec g{-0.5, 0.5, 101};
        const auto res = dalembert_solve(cd, g, opt);
        const double r = 2.0;
        const SurfaceField sf = reconstruct_case1(res.nu, r, E0);
        const SurfaceGeometry geom = fundamental_forms(sf, o.parallel);
        const auto st = geom.kp1_stats();
        led.property("surfaces/case1-curvature-mean", "case-1", st.mean, eff(o, 1e-4), -25.0);
        led.property("surfaces/case1-curvature-stddev", "case-1", st.stddev, eff(o, 1e-5));
        led.property("surfaces/case1-path-independence", "case-1", sf.path_residual, eff(o, 1e-8));
        double orth = 0, member = 0;
        for (int j = geom.margin; j < g.n - geom.margin; ++j)
            for (int i = geom.margin; i < g.n - geom.margin; ++i) {
                const Mat2 fx = fd_dx(sf.f, i, j, 4), fy = fd_dy(sf.f, i, j, 4);
                orth = std::max({orth, std::fabs(gl_inner(fx, sf.N.at(i, j))),
                                 std::fabs(gl_inner(fy, sf.N.at(i, j)))});
                member = std::max(member, std::fabs(sf.f.at(i, j).det() - 1));
            }
        led.property("surfaces/case1-gauss-orthogonality", "case-1", orth, eff(o, 1e-4));
        led.property("surfaces/case1-ads-membership", "case-1", member, eff(o, 1e-9));

        const AdaptedFrame af = adapted_frame(res.nu);
        const FrameRatios fr = frame_ratios(sf, af);
        led.property("surfaces/frame-ratio-r", "frame-ratio", fr.r_mean, eff(o, 1e-6), r);
        led.property("surfaces/frame-ratio-sum", "frame-ratio", fr.max_one_r_s, eff(o, 1e-8));
        led.property("surfaces/frame-ratio-constancy", "frame-ratio", fr.r_stddev, eff(o, 1e-6));

        // r and -1-r give the same curvature
        const SurfaceField sf2 = reconstruct_case1(res.nu, -1 - r, E0);
        const auto st2 = fundamental_forms(sf2, o.parallel).kp1_stats();
        led.property("surfaces/case1-r-symmetry", "case-1", st2.mean - st.mean, eff(o, 1e-6));
    }
    {  // degenerate Gauss maps are routed to Case 2
        const CauchyData1D cd = cauchy_preset("example-4.2");
        const GridSpec g{-0.4, 0.4, 41};
        const auto res = dalembert_solve(cd, g, opt);
        bool rejected = false;
        try {
            reconstruct_case1(res.nu, 2.0, E0);
        } catch (const DegenerateGaussMap&) {
            rejected = true;
        }
        led.property("surfaces/case1-rejects-degenerate", "case-1", rejected ? 0.0 : 1.0, 0.5);
    }
    {  // Case 2 against the printed closed form
        const Case2Preset p = make_example57(0.9);
        const GridSpec g{-1.0, 1.0, 201};
        const SlField nu = p.nu_field(g);
        const OmegaField om = solve_omega(p.frame_field(g), p.A, p.B);
        const SurfaceField sf = reconstruct_case2(nu, om, p.init);
        double dev = 0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                dev = std::max(dev, (sf.f.at(i, j) - p.printed_f(g.coord(i), g.coord(j))).norm());
        led.regression_dev("surfaces/case2-printed-f", "ex-5.7", dev, 1e-7);
        const SurfaceGeometry geom = fundamental_forms(sf, o.parallel);
        const auto st = geom.kp1_stats();
        led.property("surfaces/case2-curvature-mean", "case-2", st.mean, eff(o, 1e-4), -1.0);
        // printed first fundamental form display
        double idev = 0;
        for (int j = geom.margin; j < g.n - geom.margin; ++j)
            for (int i = geom.margin; i < g.n - geom.margin; ++i) {
                const auto& I = geom.I[geom.idx(i, j)];
                idev = std::max({idev, std::fabs(I[0] - 0.25), std::fabs(I[1] - p.A),
                                 std::fabs(I[2] - 4 * (p.A * p.A + p.B * p.B))});
            }
        led.regression_dev("surfaces/case2-first-form", "ex-5.7", idev, 1e-6);
        // omega closed form vs Runge-Kutta integration of the defining system
        double odev = 0;
        {
            const GridSpec ax{-1.0, 1.0, 2001};
            double w2 = -p.A * std::tanh(ax.tmin) - p.B / std::cosh(ax.tmin);
            double w3 = -p.A / std::cosh(ax.tmin) + p.B * std::tanh(ax.tmin);
            const double h = ax.h();
            auto rhs = [](double x, double u2, double u3) {
                return std::pair<double, double>{u3 / std::cosh(x), -u2 / std::cosh(x)};
            };
            for (int i = 0; i < ax.n; ++i) {
                const double x = ax.coord(i);
                odev = std::max(odev, std::hypot(w2 - (-p.A * std::tanh(x) - p.B / std::cosh(x)),
                                                 w3 - (-p.A / std::cosh(x) + p.B * std::tanh(x))));
                if (i + 1 == ax.n) break;
                const auto k1 = rhs(x, w2, w3);
                const auto k2 = rhs(x + h / 2, w2 + h / 2 * k1.first, w3 + h / 2 * k1.second);
                const auto k3 = rhs(x + h / 2, w2 + h / 2 * k2.first, w3 + h / 2 * k2.second);
                const auto k4 = rhs(x + h, w2 + h * k3.first, w3 + h * k3.second);
                w2 += h / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
                w3 += h / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
            }
        }
        led.property("surfaces/omega-ode-closed-form", "ex-5.7", odev, eff(o, 1e-9));
    }
    {  // printed two-parameter unipotent surface has lightlike coordinate
       // tangents, against its stated spacelike hypothesis
        const double r = 2;
        const GridSpec g{-0.9, 0.9, 61};
        double tangent_norm = 0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const double x = g.coord(i), y = g.coord(j);
                const Mat2 f = printed_f55(x, y, r);
                const Mat2 finv = f.adjugate() * (1.0 / f.det());
                const Mat2 fx = printed_f55(x + 1e-5, y, r) - printed_f55(x - 1e-5, y, r);
                const SlVec tx = sl_part(finv * fx * (1.0 / 2e-5));
                tangent_norm = std::max(tangent_norm, std::fabs(sl_inner(tx, tx)));
            }
        // spacelike would need <f^-1 f_x, f^-1 f_x> bounded away from 0
        led.regression("surfaces/printed-family-spacelike", "ex-5.5",
                       tangent_norm > 1e-6 ? 1.0 : 0.0, 1.0, 0.5);
    }
}

void check_gcp(Ledger& led, const VerifyOptions& o) {
    SolveOptions opt;
    opt.parallel = o.parallel;

    {  // printed curve data fail the stated hypotheses
        const auto printed = make_example62_printed(2.0);
        double ortho = 0, spacelike = std::numeric_limits<double>::infinity(), fconst = 0;
        for (int k = 0; k <= 60; ++k) {
            const double t = -0.6 + 0.02 * k;
            const auto e = printed->eval(t);
            ortho = std::max(ortho, std::fabs(sl_inner(e.ftan, e.nu)));
            spacelike = std::min(spacelike, sl_inner(e.ftan, e.ftan));
            fconst = std::max(fconst, (to_mat(e.ftan) - printed_ftan62(2.0)).norm());
        }
        led.regression_dev("gcp/printed-data-orthogonality", "ex-6.2", ortho, 1e-9);
        led.regression("gcp/printed-data-spacelike", "ex-6.2", spacelike > 0 ? 1.0 : 0.0, 1.0,
                       0.5);
        led.regression_dev("gcp/printed-ftan-constant", "ex-6.2", fconst, 1e-9);
    }
    {
        const GcpPreset p = make_example62(2.0);
        const GridSpec g{-0.5, 0.5, 101};
        const GcpResult res = gcp_solve(p.gcd, g, opt);
        led.property("gcp/curve-containment", "ex-6.2", res.diag_curve_residual, eff(o, 1e-7));
        led.property("gcp/gauss-along-curve", "ex-6.2", res.diag_gauss_residual, eff(o, 1e-7));
        const auto st = fundamental_forms(res.sf, o.parallel).kp1_stats();
        led.property("gcp/curvature-mean", "ex-6.2", st.mean, eff(o, 1e-4),
                     -p.gcd.rho * p.gcd.rho);
        led.property("gcp/curvature-stddev", "ex-6.2", st.stddev, eff(o, 1e-5));

        // translation consistency: w recovered from the solved map
        const double rho = p.gcd.rho;
        double wdev_exact = 0, wdev_printed = 0;
        for (int i = 2; i < g.n - 2; ++i) {
            const SlVec nx = fd_dx(res.nu, i, i, 4);
            const SlVec ny = fd_dy(res.nu, i, i, 4);
            const SlVec w_in = bracket(p.gcd.curve->eval(g.coord(i)).nu,
                                       p.gcd.curve->eval(g.coord(i)).ftan) *
                               -0.5;
            const SlVec w_tr = (nx * (rho + 1) - ny * (rho - 1)) * (1.0 / (rho * rho - 1));
            const SlVec w_pr = (nx + ny) * (1.0 / (rho * rho - 1));  // printed diagonal identity
            wdev_exact = std::max(wdev_exact, (w_tr - w_in).norm());
            wdev_printed = std::max(wdev_printed, (w_pr - w_in).norm());
        }
        led.property("gcp/w-translation-consistency", "ex-6.2", wdev_exact, eff(o, 1e-5));
        led.regression_dev("gcp/w-printed-identity", "ex-6.2", wdev_printed, 1e-5);

        // printed closed-form surface of the example
        double fdev = 0;
        for (int j = 0; j < g.n; j += 10)
            for (int i = 0; i < g.n; i += 10)
                fdev = std::max(fdev,
                                (res.sf.f.at(i, j) - printed_f55(g.coord(i), g.coord(j), 2.0)).norm());
        led.regression_dev("gcp/printed-surface", "ex-6.2", fdev, 1e-6);

        // both nondegeneracy diagnostics stay away from zero on this preset
        led.property("gcp/nondegeneracy-fraction", "nondegeneracy",
                     res.tr.diag.nondegen_fraction, 0.1, 1.0);
        const auto cdd = res.tr.cd.validate(201, g.tmin, g.tmax);
        led.regression("gcp/nondegeneracy-both-factors", "nondegeneracy",
                       std::min(cdd.min_nondegen_thm, cdd.min_nondegen_coro) > 1e-6 ? 1.0 : 0.0,
                       1.0, 0.5);
    }
}

void check_parallel(Ledger& led, const VerifyOptions& o) {
    SolveOptions opt;
    opt.parallel = o.parallel;

    const Case2Preset p = make_example57(0.9);
    const GridSpec g{-1.0, 1.0, 201};
    const SlField nu = p.nu_field(g);
    const OmegaField om = solve_omega(p.frame_field(g), p.A, p.B);
    const SurfaceField sf = reconstruct_case2(nu, om, p.init);
    const SurfaceGeometry geom = fundamental_forms(sf, o.parallel);

    {  // theta = 0 substitution of the printed displays
        const auto kh = parallel_curvatures(-2.0, 0.7, 0.0);
        const double dev = std::fabs(kh.first + 2.0) + std::fabs(kh.second - (-0.7));
        led.regression_dev("parallel/theta0-k-negh", "transform-laws", dev, 1e-14);
    }
    {  // printed singular-denominator vs the determinant condition
        const double K = -2.0, H = 0.7, th = 0.4;
        const double printed = K * std::sin(th) * std::sin(th) - H * std::sin(2 * th) + 1;
        const double derived = K * std::sin(th) * std::sin(th) + H * std::sin(2 * th) + 1;
        led.regression_dev("parallel/singular-condition-h-sign", "transform-laws",
                           std::fabs(printed - derived), 1e-12);
    }

    double quadric = 0;
    auto law_deviation = [&](double th, const SurfaceGeometry& pg, double s) {
        double dev = 0;
        for (int j = pg.margin + 2; j < g.n - pg.margin - 2; j += 3)
            for (int i = pg.margin + 2; i < g.n - pg.margin - 2; i += 3) {
                const size_t k = pg.idx(i, j);
                if (!pg.valid[k] || !geom.valid[k]) continue;
                const double Kin = geom.Kext[k] - 1;  // intrinsic curvature
                const auto kh = parallel_curvatures(Kin, s * geom.H[k], th);
                dev = std::max(dev, std::fabs((pg.Kext[k] - 1) - kh.first));
                dev = std::max(dev, std::fabs(s * pg.H[k] - kh.second));
            }
        return dev;
    };
    // calibrate the orientation convention linking trace S to the printed H
    double sigma;
    {
        const SurfaceField ps = parallel_surface(sf, geom, 0.1, o.parallel);
        const SurfaceGeometry pg = fundamental_forms(ps, o.parallel);
        sigma = law_deviation(0.1, pg, 1.0) < law_deviation(0.1, pg, -1.0) ? 1.0 : -1.0;
    }
    double law_dev = 0;
    for (double th : {0.1, 0.3, 0.7}) {
        const SurfaceField ps = parallel_surface(sf, geom, th, o.parallel);
        const SurfaceGeometry pg = fundamental_forms(ps, o.parallel);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                if (ps.mask.at(i, j))
                    quadric = std::max(quadric, std::fabs(gl_inner(ps.f.at(i, j), ps.f.at(i, j)) + 1));
        law_dev = std::max(law_dev, law_deviation(th, pg, sigma));
    }
    led.property("parallel/quadric-preservation", "transform-laws", quadric, eff(o, 1e-10));
    led.property("parallel/transform-laws-fd", "transform-laws", law_dev, eff(o, 1e-4));
    led.regression("parallel/h-orientation-sign", "transform-laws", sigma, -1.0, 0.5);

    {  // no real CMC angle from the CGC family
        bool threw = false;
        try {
            theta_for_cmc(-26.0);  // K with K+1 = -25
        } catch (const NoRealAngle&) {
            threw = true;
        }
        led.property("parallel/cmc-no-real-angle", "transform-laws", threw ? 0.0 : 1.0, 0.5);
    }
    {  // transfer round trip
        Rng rng(12007);
        std::vector<CmcCurveSample> data;
        for (int k = 0; k < 32; ++k) {
            const Mat2 f = rng.sl2();
            data.push_back({f, f * to_mat(SlVec{1, 0, 0})});
        }
        const auto fwd = gcp_transfer(data, 0.37);
        const auto back = gcp_transfer(fwd, -0.37);
        double dev = 0;
        for (size_t k = 0; k < data.size(); ++k)
            dev = std::max(dev, std::max((back[k].f - data[k].f).norm(), (back[k].N - data[k].N).norm()));
        led.property("parallel/transfer-round-trip", "transform-laws", dev, eff(o, 1e-12));
    }
}

}  // namespace

std::vector<std::string> verification_modules() {
    return {"algebra", "loops", "harmonic", "surfaces", "gcp", "parallel"};
}

Ledger run_verification_ledger(const VerifyOptions& opt) {
    Ledger led;
    auto want = [&](const char* m) {
        if (opt.modules.empty()) return true;
        return std::find(opt.modules.begin(), opt.modules.end(), m) != opt.modules.end();
    };
    if (want("algebra")) check_algebra(led, opt);
    if (want("loops")) check_loops(led, opt);
    if (want("harmonic")) check_harmonic(led, opt);
    if (want("surfaces")) check_surfaces(led, opt);
    if (want("gcp")) check_gcp(led, opt);
    if (want("parallel")) check_parallel(led, opt);
    return led;
}

}  // namespace adslf
