// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nsbem/types.hpp"

namespace nsbem {

// Quadrature rule on the reference triangle {xi >= 0, eta >= 0, xi + eta <= 1}.
// Weights sum to the reference area 1/2.
struct QuadratureRule {
    struct Point {
        double xi, eta;
    };
    std::vector<Point> points;
    std::vector<double> weights;
    int degree = 0;  // exact for polynomials up to this total degree

    size_t size() const { return points.size(); }
};

// Symmetric Gauss rules, exact to the requested polynomial degree.
// Supported degrees: 2, 4, 6, 8. Others raise DomainError listing the set.
const QuadratureRule& quadrature_rule(int degree);

}  // namespace nsbem
