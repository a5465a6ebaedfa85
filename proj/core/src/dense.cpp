// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/dense.hpp"

#include <algorithm>
#include <cmath>

extern "C" {
void zgesv_(const int* n, const int* nrhs, std::complex<double>* a, const int* lda, int* ipiv,
            std::complex<double>* b, const int* ldb, int* info);
void zgemv_(const char* trans, const int* m, const int* n, const std::complex<double>* alpha,
            const std::complex<double>* a, const int* lda, const std::complex<double>* x,
            const int* incx, const std::complex<double>* beta, std::complex<double>* y,
            const int* incy);
}

namespace nsbem {

DenseSolveResult solve_dense(DenseComplexSystem system) {
    const int n = system.dimension();
    if (n == 0) return {};
    if (system.matrix.cols() != n)
        throw SolverError("solve_dense: matrix is not square");
    if (static_cast<int>(system.rhs.size()) != n)
        throw SolverError("solve_dense: rhs length does not match matrix dimension");

    // Keep originals for the residual check.
    const ComplexDenseMatrix a_copy = system.matrix;
    const std::vector<Complex> b_copy = system.rhs;

    std::vector<int> ipiv(static_cast<size_t>(n));
    const int nrhs = 1;
    int info = 0;
    zgesv_(&n, &nrhs, system.matrix.data(), &n, ipiv.data(), system.rhs.data(), &n, &info);
    if (info > 0) {
        throw SolverError(
            "solve_dense: factorization hit an exactly singular pivot (U(" +
            std::to_string(info) + "," + std::to_string(info) +
            ") = 0); check for an internal-resonance wavenumber or misconfigured "
            "boundary conditions");
    }
    if (info < 0) throw SolverError("solve_dense: invalid LAPACK argument " + std::to_string(-info));

    DenseSolveResult result;
    result.solution = std::move(system.rhs);

    // r = A x - b via BLAS, then max-norm ratio.
    std::vector<Complex> r = b_copy;
    const Complex one(1.0, 0.0), minus_one(-1.0, 0.0);
    const int inc = 1;
    zgemv_("N", &n, &n, &one, a_copy.data(), &n, result.solution.data(), &inc, &minus_one,
           r.data(), &inc);
    double rmax = 0.0, bmax = 0.0;
    for (int i = 0; i < n; ++i) {
        rmax = std::max(rmax, std::abs(r[static_cast<size_t>(i)]));
        bmax = std::max(bmax, std::abs(b_copy[static_cast<size_t>(i)]));
    }
    result.residual = (bmax > 0.0) ? rmax / bmax : rmax;
    if (!std::isfinite(result.residual))
        throw SolverError("solve_dense: non-finite residual (numerically singular system?)");
    return result;
}

}  // namespace nsbem
