// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nsbem/types.hpp"

namespace nsbem {

// Largest spherical Bessel order the implementation guarantees; requests
// beyond it raise DomainError.
inline constexpr int max_bessel_order = 200;

// Spherical Bessel functions of complex argument, j_n(z) and y_n(z), and the
// outgoing spherical Hankel function h_n(z) = j_n(z) + i y_n(z).
//
// j is evaluated by a power series for small |z|, forward recurrence when the
// whole ladder stays below the turning point, and backward (Miller)
// recurrence with normalization otherwise. y is stable under forward
// recurrence everywhere. Internals run in extended precision so double
// results keep >= 12 significant digits for |z| <= 1e3, n <= 200.
Complex sph_bessel_j(int n, Complex z);
Complex sph_bessel_y(int n, Complex z);   // z != 0
Complex sph_hankel1(int n, Complex z);    // z != 0

// Full ladders 0..n_max in one pass; what series summations actually want.
std::vector<Complex> sph_bessel_j_ladder(int n_max, Complex z);
std::vector<Complex> sph_bessel_y_ladder(int n_max, Complex z);
std::vector<Complex> sph_hankel1_ladder(int n_max, Complex z);

enum class BesselKind { j, y, h };

// d/dz z_n(z) = -z_{n+1}(z) + (n/z) z_n(z)
Complex sph_bessel_derivative(BesselKind kind, int n, Complex z);

// Legendre polynomial P_n(x) on [-1, 1] by forward recurrence.
double legendre_p(int n, double x);
std::vector<double> legendre_p_ladder(int n_max, double x);

struct TruncationOrder {
    int n_terms = 1;  // N >= 1
};

// Number of multipole terms needed for a point source at radius source_radius
// (lengths nondimensionalized by the scatterer characteristic radius):
//   N = round(|k| + 4 |k|^(1/3) + 1)          if source_radius >= 1/2
//   N = round(|k r| + 4 |k r|^(1/3) + 1)      otherwise, r = source_radius
TruncationOrder truncation_terms(Complex k, double source_radius);

}  // namespace nsbem
