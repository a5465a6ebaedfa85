// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "nsbem/assembly.hpp"

using namespace nsbem;

namespace {

Scenario rigid_sphere(int level) {
    Scenario s;
    s.k_ref = 2.0;
    s.domains = {{"external", Complex(1.0, 0.0), 1.0, true}};
    SurfaceSpec sphere;
    sphere.id = "scatterer";
    sphere.geometry.radius = 1.0;
    sphere.subdivision_level = level;
    sphere.kind = BoundaryKind::rigid;
    sphere.bc_domain = "external";
    s.surfaces = {sphere};
    s.sources = {{"external", Vec3{0, 0, 2.0}, Complex(1, 0)}};
    return s;
}

}  // namespace

static void BM_BuildScenario(benchmark::State& state) {
    const auto scenario = rigid_sphere(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto built = build_scenario(scenario);
        benchmark::DoNotOptimize(built.total_unknowns);
    }
}
BENCHMARK(BM_BuildScenario)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_AssembleSystem(benchmark::State& state) {
    const auto built = build_scenario(rigid_sphere(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto sys = assemble_system(built);
        benchmark::DoNotOptimize(sys.rhs.data());
    }
}
BENCHMARK(BM_AssembleSystem)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
