// Benchmark: OpenMP kernels against the serial reference on the two
// workloads that dominate real runs (scattering scans and the Q integral).

#include <chrono>
#include <cstdio>

#include "halfline/parallel.hpp"
#include "halfline/potential.hpp"
#include "halfline/scattering.hpp"

using namespace halfline;

namespace {

template <class F>
double time_of(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    const Potential bump = Potential::gaussian_bump(-1.0, 3.0, 0.5, 8.0, 1e-3);
    const Potential well = Potential::square_well(2.0, 1.0, 1e-3);

    std::vector<double> ks;
    for (int i = 0; i < 400; ++i) ks.push_back(0.05 + 0.12 * i);

    std::printf("%-28s %10s %10s %8s\n", "workload", "serial[s]", "omp[s]", "speedup");
    struct row {
        const char* name;
        double s, p;
    };
    std::vector<row> rows;

    {
        std::vector<ScatteringPoint> sink;
        const double s = time_of([&] { sink = scattering_scan(bump, ks, 0.0, {}, exec::serial); });
        const double p = time_of([&] { sink = scattering_scan(bump, ks, 0.0, {}, exec::parallel); });
        rows.push_back({"scatter scan (gaussian)", s, p});
    }
    {
        q_config cs;
        cs.mode = exec::serial;
        q_config cp;
        cp.mode = exec::parallel;
        double sink = 0;
        const double s = time_of([&] { sink += quasi_szego_Q(well, cs).value; });
        const double p = time_of([&] { sink += quasi_szego_Q(well, cp).value; });
        rows.push_back({"quasi-Szego Q (well)", s, p});
    }
    {
        q_config cs;
        cs.mode = exec::serial;
        cs.quad_tol = 1e-6;
        q_config cp = cs;
        cp.mode = exec::parallel;
        double sink = 0;
        const double s = time_of([&] { sink += quasi_szego_Q(bump, cs).value; });
        const double p = time_of([&] { sink += quasi_szego_Q(bump, cp).value; });
        rows.push_back({"quasi-Szego Q (gaussian)", s, p});
    }

    for (const auto& r : rows)
        std::printf("%-28s %10.3f %10.3f %7.2fx\n", r.name, r.s, r.p, r.s / (r.p > 0 ? r.p : 1));
    return 0;
}
