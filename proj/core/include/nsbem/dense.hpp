// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nsbem/types.hpp"

namespace nsbem {

// Column-major dense complex matrix, sized for direct LAPACK consumption.
class ComplexDenseMatrix {
  public:
    ComplexDenseMatrix() = default;
    ComplexDenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(c) * rows_ + r]; }
    const Complex& operator()(int r, int c) const {
        return data_[static_cast<size_t>(c) * rows_ + r];
    }
    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

struct DenseComplexSystem {
    ComplexDenseMatrix matrix;     // square
    std::vector<Complex> rhs;      // length = dimension
    int dimension() const { return matrix.rows(); }
};

struct DenseSolveResult {
    std::vector<Complex> solution;
    double residual = 0.0;  // max |Ax - b| / max |b|
};

// Direct LU solve (LAPACK zgesv). The system is consumed: matrix and rhs are
// overwritten by the factorization and solution. The residual is evaluated
// against a copy of the original data.
DenseSolveResult solve_dense(DenseComplexSystem system);

}  // namespace nsbem
