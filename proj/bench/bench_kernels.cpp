// Micro-benchmarks for the hot kernels: frame rendering (serial vs OpenMP),
// ray casts (BVH vs brute force) and a full scripted step in both modes.
#include "hearth/bench.hpp"
#include "hearth/event.hpp"
#include "hearth/renderer.hpp"
#include "hearth/rng.hpp"
#include "hearth/scene_gen.hpp"

#include <benchmark/benchmark.h>

using namespace hearth;

namespace {

void BM_RenderSerial(benchmark::State& state)
{
    Scene s = generate_scene(17);
    Bvh bvh = build_bvh(s);
    int size = static_cast<int>(state.range(0));
    Camera cam = Camera::from_agent(s.agent, size, size);
    for (auto _ : state) benchmark::DoNotOptimize(render_frame_serial(s, cam, bvh, {}));
    state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_RenderSerial)->Arg(150)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_RenderParallel(benchmark::State& state)
{
    Scene s = generate_scene(17);
    Bvh bvh = build_bvh(s);
    int size = static_cast<int>(state.range(0));
    Camera cam = Camera::from_agent(s.agent, size, size);
    for (auto _ : state) benchmark::DoNotOptimize(render_frame(s, cam, bvh, {}, 0));
    state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_RenderParallel)->Arg(150)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

std::vector<Ray> random_rays(const Scene& s, int n)
{
    CounterRng rng(1);
    std::vector<Ray> rays;
    while (static_cast<int>(rays.size()) < n) {
        Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (length(d) < 1e-3) continue;
        rays.push_back({{rng.uniform(s.floorBounds.min.x, s.floorBounds.max.x), rng.uniform(0, 2.4),
                         rng.uniform(s.floorBounds.min.z, s.floorBounds.max.z)},
                        normalize(d), 10, kThickRayRadius});
    }
    return rays;
}

void BM_CastBvh(benchmark::State& state)
{
    Scene s = generate_scene(17);
    Bvh bvh = build_bvh(s);
    auto rays = random_rays(s, 1024);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(bvh.cast_raw(rays[i++ & 1023]));
}
BENCHMARK(BM_CastBvh);

void BM_CastBrute(benchmark::State& state)
{
    Scene s = generate_scene(17);
    Bvh bvh = build_bvh(s);
    auto rays = random_rays(s, 1024);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(brute::cast_raw(bvh.colliders(), rays[i++ & 1023]));
}
BENCHMARK(BM_CastBrute);

void BM_ScriptedStep(benchmark::State& state)
{
    bool render = state.range(0) != 0;
    Simulation sim(17, {});
    CounterRng rng(builtin_action_mix().seed, 0);
    for (auto _ : state) {
        sim.step(next_scripted_action(rng, builtin_action_mix(), sim));
        if (render) benchmark::DoNotOptimize(encode_event(build_event(sim, sim.render(1))));
        else benchmark::DoNotOptimize(build_metadata(sim).dump());
    }
}
BENCHMARK(BM_ScriptedStep)->ArgName("render")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
