#include "adslf/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "adslf/config.hpp"
#include "adslf/io.hpp"
#include "adslf/ledger.hpp"
#include "adslf/parallel_surface.hpp"
#include "adslf/presets.hpp"

namespace adslf {

namespace {

namespace fs = std::filesystem;

void check_domain(const RunConfig& rc) {
    const PresetInfo* p = rc.preset.empty() ? nullptr : find_preset(rc.preset);
    if (p && !rc.allow_singular) {
        const double lim = p->singular_abs_t;
        if (std::max(std::fabs(rc.tmin), std::fabs(rc.tmax)) >= lim)
            throw UsageError("domain touches the declared singular set |t| = " +
                             std::to_string(lim) + " (use --allow-singular to override)");
    }
}

GridSpec grid_of(const RunConfig& rc) { return {rc.tmin, rc.tmax, rc.grid_n()}; }

SolveOptions solve_options(const RunConfig& rc) {
    SolveOptions o;
    o.order = rc.trunc_order;
    o.parallel = !rc.serial;
    if (rc.tol) o.tol = *rc.tol;
    return o;
}

std::string outpath(const RunConfig& rc, const char* name) {
    fs::create_directories(rc.out_dir);
    return (fs::path(rc.out_dir) / name).string();
}

CauchyData1D cauchy_input(const RunConfig& rc) {
    if (!rc.input_csv.empty()) {
        // tabulated route: curve schema + rho, translated to Cauchy data
        const CurveCsv c = read_curve_csv(rc.input_csv);
        GeometricCauchyData gcd;
        gcd.curve = std::make_shared<TabulatedGcpCurve>(c.t, c.f, c.nu);
        gcd.rho = rc.rho;
        gcd.name = rc.input_csv;
        return gcp_translate(gcd, (int)c.t.size(), c.t.front(), c.t.back()).cd;
    }
    return cauchy_preset(rc.preset.empty() ? "example-4.2" : rc.preset);
}

int do_harmonic(const RunConfig& rc) {
    check_domain(rc);
    const GridSpec g = grid_of(rc);
    const CauchyData1D cd = cauchy_input(rc);
    const DalembertResult res = dalembert_solve(cd, g, solve_options(rc));
    const double resid = harmonicity_residual(res.nu, !rc.serial);
    ExportBundle b = ExportBundle::harmonic_only(g, res.nu);
    export_csv(b, outpath(rc, "harmonic.csv"));
    export_obj(b, outpath(rc, "harmonic.obj"));
    std::printf("harmonic solve: %dx%d grid, harmonicity residual %.3e\n", g.n, g.n, resid);
    std::printf("wrote %s, %s\n", outpath(rc, "harmonic.csv").c_str(),
                outpath(rc, "harmonic.obj").c_str());
    return 0;
}

int do_case1(const RunConfig& rc) {
    check_domain(rc);
    const GridSpec g = grid_of(rc);
    const CauchyData1D cd = cauchy_input(rc);
    const DalembertResult res = dalembert_solve(cd, g, solve_options(rc));
    const SurfaceField sf = reconstruct_case1(res.nu, rc.r, E0);
    const SurfaceGeometry geom = fundamental_forms(sf, !rc.serial);
    const auto st = geom.kp1_stats();
    ExportBundle b = ExportBundle::from_surface(sf, geom);
    export_csv(b, outpath(rc, "surface.csv"));
    export_obj(b, outpath(rc, "surface.obj"));
    std::printf("case-1 surface: r=%g, K+1 mean %.8g (stddev %.2e), target %.8g\n", rc.r, st.mean,
                st.stddev, -(2 * rc.r + 1) * (2 * rc.r + 1));
    return 0;
}

int do_case2(const RunConfig& rc) {
    check_domain(rc);
    const GridSpec g = grid_of(rc);
    const Case2Preset p = make_example57(rc.theta);
    const double A = (rc.A || rc.B) ? rc.A : p.A;
    const double B = (rc.A || rc.B) ? rc.B : p.B;
    const SlField nu = p.nu_field(g);
    const OmegaField om = solve_omega(p.frame_field(g), A, B);
    const SurfaceField sf = reconstruct_case2(nu, om, p.init);
    const SurfaceGeometry geom = fundamental_forms(sf, !rc.serial);
    const auto st = geom.kp1_stats();
    ExportBundle b = ExportBundle::from_surface(sf, geom);
    export_csv(b, outpath(rc, "surface.csv"));
    export_obj(b, outpath(rc, "surface.obj"));
    std::printf("case-2 surface: theta=%g (A=%g B=%g), K+1 mean %.8g (stddev %.2e), target -1\n",
                rc.theta, A, B, st.mean, st.stddev);
    return 0;
}

int do_gcp(const RunConfig& rc) {
    check_domain(rc);
    const GridSpec g = grid_of(rc);
    GeometricCauchyData gcd;
    if (!rc.input_csv.empty()) {
        const CurveCsv c = read_curve_csv(rc.input_csv);
        gcd.curve = std::make_shared<TabulatedGcpCurve>(c.t, c.f, c.nu);
        gcd.rho = rc.rho;
        gcd.name = rc.input_csv;
    } else {
        const GcpPreset p = make_example62(rc.r);
        gcd = p.gcd;
        if (rc.rho > 0 && std::fabs(rc.rho - p.gcd.rho) > 1e-12) gcd.rho = rc.rho;
    }
    const GcpResult res = gcp_solve(gcd, g, solve_options(rc));
    const SurfaceGeometry geom = fundamental_forms(res.sf, !rc.serial);
    const auto st = geom.kp1_stats();
    ExportBundle b = ExportBundle::from_surface(res.sf, geom);
    CurveCsv curve;
    for (int i = 0; i < g.n; ++i) {
        const auto e = gcd.curve->eval(g.coord(i));
        curve.t.push_back(g.coord(i));
        curve.f.push_back(e.f);
        curve.nu.push_back(e.nu);
        b.curve.push_back(e.f);
    }
    export_csv(b, outpath(rc, "surface.csv"));
    export_obj(b, outpath(rc, "surface.obj"));
    write_curve_csv(curve, outpath(rc, "curve.csv"));
    std::printf("gcp solve: rho=%g, K+1 mean %.8g (target %.8g), curve containment %.3e, "
                "gauss residual %.3e\n",
                gcd.rho, st.mean, -gcd.rho * gcd.rho, res.diag_curve_residual,
                res.diag_gauss_residual);
    return 0;
}

int do_parallel(const RunConfig& rc, const std::string& input) {
    const ExportBundle in = import_csv(input);
    if (!in.has_surface) throw UsageError("parallel apply: input has no surface data");
    SurfaceField sf;
    sf.g = in.g;
    sf.nu = in.nu;
    sf.f = in.f;
    sf.mask = in.mask;
    sf.N = Mat2Field(in.g);
    for (int j = 0; j < in.g.n; ++j)
        for (int i = 0; i < in.g.n; ++i) sf.N.at(i, j) = sf.f.at(i, j) * to_mat(sf.nu.at(i, j));
    const SurfaceGeometry geom = fundamental_forms(sf, !rc.serial);
    const SurfaceField ps = parallel_surface(sf, geom, rc.theta, !rc.serial);
    const SurfaceGeometry pg = fundamental_forms(ps, !rc.serial);
    ExportBundle b = ExportBundle::from_surface(ps, pg);
    export_csv(b, outpath(rc, "parallel.csv"));
    export_obj(b, outpath(rc, "parallel.obj"));
    size_t alive = 0;
    for (auto m : ps.mask.a) alive += m;
    std::printf("parallel apply: theta=%g, %zu/%zu nodes kept, K+1 mean %.8g\n", rc.theta, alive,
                ps.mask.a.size(), pg.kp1_stats().mean);
    return 0;
}

int do_export(const RunConfig& rc, const std::string& input, const std::string& obj,
              const std::string& csv) {
    const ExportBundle b = import_csv(input);
    if (!obj.empty()) export_obj(b, obj);
    if (!csv.empty()) export_csv(b, csv);
    if (obj.empty() && csv.empty()) throw UsageError("export: nothing to do (need --obj or --csv)");
    return 0;
}

int do_verify(const RunConfig& rc, const std::vector<std::string>& modules) {
    VerifyOptions vo;
    vo.modules = modules;
    vo.parallel = !rc.serial;
    vo.tol_override = rc.tol;
    const Ledger led = run_verification_ledger(vo);
    std::fputs(led.to_text().c_str(), stdout);
    led.write_csv(outpath(rc, "ledger.csv"));
    std::printf("ledger: %zu entries (%d match, %d mismatch, %d pass, %d fail) -> %s\n",
                led.entries.size(), led.count(LedgerStatus::match),
                led.count(LedgerStatus::mismatch), led.count(LedgerStatus::property_pass),
                led.count(LedgerStatus::property_fail), outpath(rc, "ledger.csv").c_str());
    if (led.entries.empty()) {
        std::printf("nothing verified\n");
        return 2;
    }
    return led.all_properties_pass() ? 0 : 2;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"Lorentz harmonic maps into H^2 and constant-curvature surfaces in AdS_3"};
    app.require_subcommand(1);

    RunConfig rc;
    if (const char* env = std::getenv("ADSLF_TOL")) rc.tol = std::atof(env);

    std::string config_path, input, obj_out, csv_out;
    std::vector<std::string> modules;

    // config file fills defaults before parsing, so command-line flags win
    for (int k = 1; k < argc; ++k) {
        const std::string a = argv[k];
        if (a == "--config" && k + 1 < argc)
            config_path = argv[k + 1];
        else if (a.rfind("--config=", 0) == 0)
            config_path = a.substr(9);
    }
    try {
        if (!config_path.empty()) rc.apply(parse_config_file(config_path));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    }

    auto add_common = [&](CLI::App* c, bool domain = true) {
        c->add_option("--config", config_path, "TOML config file ([domain], [params], [output])");
        c->add_option("--out-dir", rc.out_dir, "output directory");
        c->add_option("--tol", rc.tol, "tolerance override (also ADSLF_TOL)");
        c->add_flag("--serial", rc.serial, "disable OpenMP kernels");
        if (domain) {
            c->add_option("--tmin", rc.tmin, "domain lower bound");
            c->add_option("--tmax", rc.tmax, "domain upper bound");
            c->add_option("--step", rc.step, "grid spacing h");
            c->add_flag("--allow-singular", rc.allow_singular,
                        "allow domains touching declared singular sets");
            c->add_option("--trunc-order", rc.trunc_order, "loop truncation order");
        }
    };

    CLI::App* harmonic = app.add_subcommand("harmonic", "harmonic map pipelines");
    CLI::App* hsolve = harmonic->add_subcommand("solve", "solve the Cauchy problem");
    hsolve->add_option("--preset", rc.preset, "preset name (see README)");
    hsolve->add_option("--csv", rc.input_csv, "curve CSV input (with --rho)");
    hsolve->add_option("--rho", rc.rho, "curvature parameter for CSV input");
    add_common(hsolve);

    CLI::App* surface = app.add_subcommand("surface", "surface reconstructions");
    CLI::App* case1 = surface->add_subcommand("case1", "immersive Gauss map, K+1 = -(2r+1)^2");
    case1->add_option("--preset", rc.preset, "Cauchy preset (default const-potential)");
    case1->add_option("--r", rc.r, "curvature parameter r (not 0 or -1)");
    add_common(case1);
    CLI::App* case2 = surface->add_subcommand("case2", "degenerate Gauss map, K+1 = -1");
    case2->add_option("--theta", rc.theta, "family angle");
    case2->add_option("--A", rc.A, "omega coefficient A");
    case2->add_option("--B", rc.B, "omega coefficient B");
    add_common(case2);

    CLI::App* gcp = app.add_subcommand("gcp", "geometric Cauchy problem");
    CLI::App* gsolve = gcp->add_subcommand("solve", "surface through a curve");
    gsolve->add_option("--preset", rc.preset, "gcp preset (default example-6.2)");
    gsolve->add_option("--csv", rc.input_csv, "curve CSV input");
    gsolve->add_option("--r", rc.r, "Case-1 parameter (rho = |2r+1|)");
    gsolve->add_option("--rho", rc.rho, "extrinsic curvature parameter");
    add_common(gsolve);

    CLI::App* par = app.add_subcommand("parallel", "parallel-surface transform");
    CLI::App* papply = par->add_subcommand("apply", "transform a stored surface");
    papply->add_option("--in", input, "surface CSV")->required();
    papply->add_option("--theta", rc.theta, "angular distance");
    add_common(papply, false);

    CLI::App* verify = app.add_subcommand("verify", "verification ledger");
    CLI::App* vall = verify->add_subcommand("all", "run every registered check");
    vall->add_option("--modules", modules, "restrict to modules (comma separated)")
        ->delimiter(',');
    add_common(vall, false);

    CLI::App* exp = app.add_subcommand("export", "convert stored results");
    exp->add_option("--in", input, "input CSV")->required();
    exp->add_option("--obj", obj_out, "write OBJ mesh");
    exp->add_option("--csv", csv_out, "rewrite CSV");
    add_common(exp, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (hsolve->parsed()) return do_harmonic(rc);
        if (case1->parsed()) {
            if (rc.preset.empty()) rc.preset = "const-potential";
            return do_case1(rc);
        }
        if (case2->parsed()) return do_case2(rc);
        if (gsolve->parsed()) return do_gcp(rc);
        if (papply->parsed()) return do_parallel(rc, input);
        if (vall->parsed()) return do_verify(rc, modules);
        if (exp->parsed()) return do_export(rc, input, obj_out, csv_out);
        throw UsageError("no subcommand");
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 1;
    } catch (const NotInBigCell& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        size_t shown = 0;
        for (const auto& [i, j] : e.nodes) {
            std::fprintf(stderr, "  node (%d, %d)\n", i, j);
            if (++shown >= 12) {
                std::fprintf(stderr, "  ... %zu more\n", e.nodes.size() - shown);
                break;
            }
        }
        return 3;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
}

}  // namespace adslf
