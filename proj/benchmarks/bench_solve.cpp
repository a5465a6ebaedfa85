// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "nsbem/dense.hpp"

using namespace nsbem;

static void BM_SolveDense(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexDenseMatrix a(n, n);
    std::vector<Complex> b(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        b[static_cast<size_t>(r)] = Complex(u(rng), u(rng));
        for (int c = 0; c < n; ++c) a(r, c) = Complex(u(rng), u(rng));
        a(r, r) += Complex(6.0, 2.0);
    }
    for (auto _ : state) {
        DenseComplexSystem sys;
        sys.matrix = a;
        sys.rhs = b;
        auto res = solve_dense(std::move(sys));
        benchmark::DoNotOptimize(res.solution.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_SolveDense)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond)->Complexity();
