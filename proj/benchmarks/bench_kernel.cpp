// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "nsbem/kernel.hpp"

using namespace nsbem;

static void BM_HelmholtzKernels(benchmark::State& state) {
    const Vec3 x{1.1, 0.3, -0.2}, x0{0.0, 0.1, 0.4};
    const Vec3 n = normalized(Vec3{0.3, 0.8, 0.5});
    const Complex k(5.0, 0.0);
    for (auto _ : state) {
        auto kp = helmholtz_kernels(x, x0, n, k);
        benchmark::DoNotOptimize(kp);
    }
}
BENCHMARK(BM_HelmholtzKernels);

static void BM_RegularizedKernels(benchmark::State& state) {
    const Vec3 x{1.1, 0.3, -0.2}, x0{0.9, 0.25, -0.1};
    const Vec3 n = normalized(Vec3{0.3, 0.8, 0.5});
    const Complex k(5.0, 0.0);
    for (auto _ : state) {
        auto kp = regularized_kernels(x, x0, n, k);
        benchmark::DoNotOptimize(kp);
    }
}
BENCHMARK(BM_RegularizedKernels);
