// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>

#include "adslf/parallel_surface.hpp"
#include "adslf/presets.hpp"

using namespace adslf;

namespace {

template <class F>
double time_best(F&& fn, int reps = 3) {
    double best = 1e100;
    for (int k = 0; k < reps; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4f s %10.4f s   speedup %5.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
    std::printf("%-28s %12s %12s\n", "kernel", "serial", "openmp");

    {
        const CauchyData1D cd = cauchy_preset("example-4.2");
        const GridSpec g{-0.6, 0.6, 481};
        const double ts = time_best([&] { characteristic_oracle(cd, g, false); });
        const double tp = time_best([&] { characteristic_oracle(cd, g, true); });
        row("characteristic_oracle", ts, tp);
    }

    const CauchyData1D cd = cauchy_preset("const-potential");
    const GridSpec g{-0.5, 0.5, 201};
    SolveOptions so;
    so.parallel = false;
    const double dal_s = time_best([&] { dalembert_solve(cd, g, so); }, 2);
    so.parallel = true;
    const double dal_p = time_best([&] { dalembert_solve(cd, g, so); }, 2);
    row("dalembert_solve", dal_s, dal_p);

    const auto res = dalembert_solve(cd, g, so);
    const SurfaceField sf = reconstruct_case1(res.nu, 2.0, E0);
    {
        const double ts = time_best([&] { fundamental_forms(sf, false); });
        const double tp = time_best([&] { fundamental_forms(sf, true); });
        row("fundamental_forms", ts, tp);
    }
    {
        const SurfaceGeometry geom = fundamental_forms(sf, true);
        const double ts = time_best([&] { parallel_surface(sf, geom, 0.3, false); });
        const double tp = time_best([&] { parallel_surface(sf, geom, 0.3, true); });
        row("parallel_surface", ts, tp);
    }
    {
        const double ts = time_best([&] { harmonicity_residual(res.nu, false); });
        const double tp = time_best([&] { harmonicity_residual(res.nu, true); });
        row("harmonicity_residual", ts, tp);
    }
    return 0;
}
