#include <benchmark/benchmark.h>

#include "ranktwo/integrate.hpp"
#include "ranktwo/linflow.hpp"
#include "ranktwo/pfaff.hpp"
#include "ranktwo/systems.hpp"

using namespace ranktwo;
using namespace ranktwo::systems;
namespace itg = ranktwo::integrate;

namespace {

const Point kDiskPt5 = {0.2, 0.1, 0.3, 0.4, 0.5};

void BM_vf_eval_disk5(benchmark::State& state) {
    const auto spec = make_disk(DiskParams{}, Variant::extended5);
    std::vector<double> out(5);
    for (auto _ : state) {
        spec.vf.eval(kDiskPt5, out);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_vf_eval_disk5);

void BM_hamiltonian_vf_disk5(benchmark::State& state) {
    const auto spec = make_disk(DiskParams{}, Variant::extended5);
    const auto biv = build_bivector(spec);
    for (auto _ : state) {
        auto v = pfaff::hamiltonian_vf_at(biv, spec.energy, kDiskPt5);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_hamiltonian_vf_disk5);

void BM_schouten_self_disk5(benchmark::State& state) {
    const auto spec = make_disk(DiskParams{}, Variant::extended5);
    const auto biv = build_bivector(spec);
    for (auto _ : state) {
        auto t = schouten_self(biv, kDiskPt5);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_schouten_self_disk5);

void BM_rank_at_disk5(benchmark::State& state) {
    const auto spec = make_disk(DiskParams{}, Variant::extended5);
    const auto biv = build_bivector(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rank_at(biv, kDiskPt5));
    }
}
BENCHMARK(BM_rank_at_disk5);

void BM_fundamental_matrix_disk(benchmark::State& state) {
    const auto spec = make_disk(DiskParams{}, Variant::reduced4);
    const auto curve = coefficient_curve(spec);
    for (auto _ : state) {
        auto g = linflow::fundamental_matrix(curve, 0.0, 0.5);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_fundamental_matrix_disk);

void BM_rk4_cylinder_1k_steps(benchmark::State& state) {
    const auto spec = make_cylinder(CylinderParams{});
    const Point x0 = {0.0, 0.1, 0.2, 0.5};
    itg::IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    for (auto _ : state) {
        auto traj = itg::integrate(spec, x0, cfg);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_rk4_cylinder_1k_steps);

}  // namespace

BENCHMARK_MAIN();
