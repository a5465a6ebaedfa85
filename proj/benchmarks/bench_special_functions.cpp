// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "nsbem/special_functions.hpp"

using namespace nsbem;

static void BM_SphBesselLadder(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Complex z(2.4, 1.1);
    for (auto _ : state) {
        auto j = sph_bessel_j_ladder(n, z);
        benchmark::DoNotOptimize(j.data());
    }
}
BENCHMARK(BM_SphBesselLadder)->Arg(8)->Arg(32)->Arg(128);

static void BM_SphHankelLadder(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Complex z(6.0, 0.5);
    for (auto _ : state) {
        auto h = sph_hankel1_ladder(n, z);
        benchmark::DoNotOptimize(h.data());
    }
}
BENCHMARK(BM_SphHankelLadder)->Arg(8)->Arg(64);

static void BM_LegendreLadder(benchmark::State& state) {
    for (auto _ : state) {
        auto p = legendre_p_ladder(static_cast<int>(state.range(0)), 0.37);
        benchmark::DoNotOptimize(p.data());
    }
}
BENCHMARK(BM_LegendreLadder)->Arg(16)->Arg(100);
