// Serial reference vs OpenMP kernels.

#include "chiral/halfspace.hpp"
#include "chiral/orientation.hpp"
#include "chiral/scenario.hpp"

#include <benchmark/benchmark.h>

using namespace chiral;

namespace {

ExecPolicy policy_of(const benchmark::State& st) { return st.range(0) ? ExecPolicy::parallel : ExecPolicy::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_numeric_curl(benchmark::State& st)
{
    const double w = 3e15, k0 = w / kC;
    const MediumResponse med{{2.25, 0.1}, {1, 0}, {0.05, 0.002}, w};
    const PlanarGeometry geom{1.0 / k0, Handedness::right, med};
    const ReflectionFn refl = [&](cplx q) { return fresnel_general_kperp(med, q); };
    for (auto _ : st)
        benchmark::DoNotOptimize(curl_img_scatter_numeric(geom, k0, refl, {}, policy_of(st)));
    label(st);
}

void BM_orientation_average(benchmark::State& st)
{
    TransitionDipoles mol;
    mol.omega_ik = 1e15;
    mol.d = {cplx(1e-30), cplx(0.2e-30), cplx(0)};
    mol.m = {cplx(0, 1e-23), cplx(0, 0.1e-23), cplx(0.3e-23)};
    for (auto _ : st)
        benchmark::DoNotOptimize(average_orientations(mol, 200000, 12345, policy_of(st)));
    label(st);
}

void BM_mirror_sweep(benchmark::State& st)
{
    const nlohmann::json base = load_json_file(CHIRAL_SCENARIO_DIR "/mirror_sweep.json");
    const auto grid = sweep_grid(1e-8, 1e-6, 41, false);
    for (auto _ : st)
        benchmark::DoNotOptimize(run_sweep(base, "geometry.z_m", grid, policy_of(st)));
    label(st);
}

}  // namespace

BENCHMARK(BM_numeric_curl)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_orientation_average)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mirror_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
